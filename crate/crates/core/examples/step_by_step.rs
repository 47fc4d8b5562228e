//! Drives the engine one arrival at a time and prints every transition.

use sos::engine::{Engine, IntervalDomain};
use sos::interior::AdvSort;
use sos::model::compute_ell;
use sos::rng::PortableRng;
use sos::{AlgorithmConfig, DistributionSpec};

fn main() -> sos::Result<()> {
    let n = 1 << 12;
    // A small backyard constant lets several phases appear at this size.
    let cfg = AlgorithmConfig::new(n, 1).with_backyard_constant(0.5);
    let domain = IntervalDomain::new(&DistributionSpec::Uniform, compute_ell(n, 2.0)?)?;
    let mut engine = Engine::new(cfg, &domain, &AdvSort)?;
    let mut rng = PortableRng::new(3);
    for t in 0..n {
        let x = rng.next_f64();
        let r = engine.place(&[x])?;
        if r.transitions > 0 {
            println!(
                "arrival {t}: x = {x:.4} -> cell {} ({:?}, phase {:?})",
                r.cell, r.mode, r.phase
            );
        }
    }
    for ph in engine.phases() {
        println!("A_{} bucket sizes {:?}", ph.index(), ph.bucket_capacities());
    }
    let out = engine.finish();
    println!("fill before overflow: {:?}", out.trace.fill_before_overflow);
    Ok(())
}
