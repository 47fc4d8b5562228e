//! First-overflow and all-full times of 256 bins of capacity 100.

use sos::harness::{verify_bin_timing, BinSimConfig};

fn main() -> sos::Result<()> {
    let cfg = BinSimConfig::even(256, 25_600, 500, 1, 20.0);
    let r = verify_bin_timing(&cfg)?;
    println!(
        "M = {}, T median {} (p05 {}), T' median {} (p95 {})",
        r.total, r.overflow_time.median, r.overflow_time.p05, r.fill_time.median, r.fill_time.p95
    );
    for s in &r.slack {
        println!(
            "a = {}: T >= {:.0} in {:.3}, T' <= {:.0} in {:.3}",
            s.a, s.overflow_bound, s.overflow_fraction, s.fill_bound, s.fill_fraction
        );
    }
    println!("pass: {}", r.pass);
    Ok(())
}
