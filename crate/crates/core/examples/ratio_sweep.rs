//! Ratio sweep over n with CSV and JSON output.
//!
//! `cargo run --release --example ratio_sweep -- /tmp/sweep`

use sos::harness::{emit_report, run_experiment, ExperimentConfig, ExperimentMode, OutputFormat};

fn main() -> sos::Result<()> {
    let ns = vec![1 << 12, 1 << 14, 1 << 16];
    let cfg = ExperimentConfig::new(ExperimentMode::Sweep, ns, 1)
        .with_trials(5)
        .with_seed(9);
    let report = run_experiment(&cfg)?;
    for s in &report.summary.sizes {
        println!(
            "n = {:6}: mean ratio {:7.1}, / log2^2 n = {:.3}, k = {:.1}",
            s.n, s.mean_ratio, s.normalized_ratio, s.mean_k
        );
    }
    if let Some(fit) = &report.summary.fit {
        println!("slope {:.3}, drift {:.3}", fit.slope, fit.normalized_drift);
    }
    if let Some(dir) = std::env::args().nth(1) {
        for p in emit_report(&report, dir.as_ref(), OutputFormat::Csv)? {
            println!("wrote {}", p.display());
        }
    }
    Ok(())
}
