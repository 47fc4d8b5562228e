//! How often each subarray is full before the next one overflows.

use sos::harness::{verify_fill_before_overflow, ExperimentConfig, ExperimentMode};

fn main() -> sos::Result<()> {
    let cfg = ExperimentConfig::new(ExperimentMode::VerifyFill, vec![1 << 18], 1)
        .with_trials(20)
        .with_seed(2);
    let r = verify_fill_before_overflow(&cfg)?;
    for b in &r.boundaries {
        println!("A_{} before A_{}: {}/{}", b.j, b.j + 1, b.successes, b.runs);
    }
    println!(
        "all boundaries: {:.2}, failures: {:.2}",
        r.overall_success, r.failure_rate
    );
    Ok(())
}
