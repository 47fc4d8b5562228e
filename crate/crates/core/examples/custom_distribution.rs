//! Non-uniform input: keys become equal-mass intervals.

use sos::harness::{run_experiment, ExperimentConfig, ExperimentMode};
use sos::model::quantile_boundaries;
use sos::{DistributionSpec, Quantile};

fn main() -> sos::Result<()> {
    // F(x) = x^2, given as a closed form and as an interpolated table.
    let closed = DistributionSpec::InverseCdf(Quantile::sqrt());
    let table: String = (0..=64)
        .map(|i| format!("{} {}\n", i as f64 / 64.0, (i as f64 / 64.0).sqrt()))
        .collect();
    let tabled = DistributionSpec::InverseCdf(Quantile::parse_table(&table)?);
    println!("boundaries {:?}", quantile_boundaries(&closed, 4)?);

    for dist in [DistributionSpec::Uniform, closed, tabled] {
        let label = dist.label();
        let cfg = ExperimentConfig::new(ExperimentMode::Sort1d, vec![1 << 16], 1)
            .with_trials(5)
            .with_distribution(dist);
        let s = &run_experiment(&cfg)?.summary.sizes[0];
        println!(
            "{label:>12}: mean ratio {:.1}, failure rate {:.2}",
            s.mean_ratio, s.failure_rate
        );
    }
    Ok(())
}
