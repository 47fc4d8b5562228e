//! Offline estimates: exact DP, 2-opt heuristic, block tour and the BHH value.

use sos::geometry::BlockPartition;
use sos::model::{compute_ell, DistributionSpec};
use sos::oracles::{bhh_reference, block_tour_cost, mu_bounds, tsp_path_exact, tsp_path_heuristic};
use sos::rng::{sample_points, PortableRng};

fn main() -> sos::Result<()> {
    let small = sample_points(&mut PortableRng::new(4), 12, 2, &DistributionSpec::Uniform);
    println!(
        "n = 12: exact {:.4}, heuristic {:.4}",
        tsp_path_exact(&small)?.value,
        tsp_path_heuristic(&small).value
    );

    let n = 1 << 14;
    let pts = sample_points(&mut PortableRng::new(5), n, 2, &DistributionSpec::Uniform);
    let part = BlockPartition::round_robin(2, compute_ell(n, 2.0)?);
    let h = tsp_path_heuristic(&pts).value;
    let b = block_tour_cost(&pts, &part).value;
    println!(
        "n = {n}: heuristic {h:.2}, block tour {b:.2} (x{:.3}), BHH reference {:.2}",
        b / h,
        bhh_reference(n, 2).value
    );
    let (lo, hi) = mu_bounds(12);
    println!("mean distance bounds at d = 12: [{lo:.3}, {hi:.3}]");
    Ok(())
}
