//! Sorts 2^16 uniform reals online and compares with the sorted span.

use sos::model::{opt_sort_cost, tour_cost};
use sos::rng::{sample_points, PortableRng};
use sos::{run_auto, AlgorithmConfig, DistributionSpec};

fn main() -> sos::Result<()> {
    let n = 1 << 16;
    let input = sample_points(&mut PortableRng::new(7), n, 1, &DistributionSpec::Uniform);
    let out = run_auto(&AlgorithmConfig::new(n, 1), &input)?;
    let cost = tour_cost(&out.array)?;
    let opt = opt_sort_cost(input.coords())?;
    println!(
        "n = {n}, ell = {}, phases = {}, failed = {}",
        out.trace.ell,
        out.trace.k(),
        out.trace.failed
    );
    for p in &out.trace.phases {
        println!(
            "  A_{}: {} cells in {} buckets, overflow after {:?}, full after {:?}",
            p.index, p.len, p.buckets, p.overflow_time, p.fill_time
        );
    }
    println!(
        "backyard: {} cells, {} used",
        out.trace.backyard_len, out.trace.backyard_placements
    );
    println!("cost {cost:.3}, opt {opt:.6}, ratio {:.1}", cost / opt);
    Ok(())
}
