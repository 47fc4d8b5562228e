//! Online TSP in the unit square, and the arrival-order mode at d = 12.

use sos::model::tour_cost;
use sos::oracles::tsp_path_heuristic;
use sos::rng::{sample_points, PortableRng};
use sos::{run_auto, AlgorithmConfig, DistributionSpec};

fn main() -> sos::Result<()> {
    for (n, d) in [(1 << 14, 2), (1 << 12, 3), (1 << 10, 12)] {
        let pts = sample_points(&mut PortableRng::new(11), n, d, &DistributionSpec::Uniform);
        let out = run_auto(&AlgorithmConfig::new(n, d), &pts)?;
        let cost = tour_cost(&out.array)?;
        let h = tsp_path_heuristic(&pts).value;
        println!(
            "n = {n:5}, d = {d:2}: ell {}, {:?}, cost {cost:8.2}, heuristic {h:7.2}, ratio {:.2}",
            out.trace.ell,
            out.trace.strategy,
            cost / h
        );
    }
    Ok(())
}
