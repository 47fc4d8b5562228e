//! Cost of the in-bucket strategies on m uniform points, next to sqrt(m).

use sos::interior::{arrange, AdvSort, ArrivalOrder, GridTsp, InteriorStrategy};
use sos::model::{path_cost, DistributionSpec, PointSet};
use sos::rng::{sample_points, PortableRng};

fn cost(strategy: &dyn InteriorStrategy, pts: &PointSet) -> sos::Result<f64> {
    let v: Vec<Vec<f64>> = pts.iter().map(<[f64]>::to_vec).collect();
    Ok(path_cost(&PointSet::from_points(
        pts.dim(),
        &arrange(strategy, &v)?,
    )?))
}

fn main() -> sos::Result<()> {
    for m in [256, 1024, 4096] {
        let line = sample_points(&mut PortableRng::new(1), m, 1, &DistributionSpec::Uniform);
        let square = sample_points(&mut PortableRng::new(2), m, 2, &DistributionSpec::Uniform);
        println!(
            "m = {m:5}  sqrt {:5.1}  1-D segments {:7.2} (arrival {:7.2})  2-D segments {:7.2} (arrival {:7.2})",
            (m as f64).sqrt(),
            cost(&AdvSort, &line)?,
            cost(&ArrivalOrder, &line)?,
            cost(&GridTsp, &square)?,
            cost(&ArrivalOrder, &square)?,
        );
    }
    Ok(())
}
