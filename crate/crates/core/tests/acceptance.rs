//! The twelve acceptance criteria, each checked at its stated tolerance.
//! Prints one PASS/FAIL line per criterion and exits non-zero on any failure.

use std::time::Instant;

use itertools::Itertools;
use sos::engine::plan_next_phase;
use sos::geometry::{order_index, serpentine_order, BlockPartition};
use sos::harness::{
    emit_report, run_experiment, run_trial, verify_bin_timing, verify_fill_before_overflow,
    BinSimConfig, ExperimentConfig, ExperimentMode, OutputFormat,
};
use sos::model::{compute_ell, opt_sort_cost, DistributionSpec, Quantile};
use sos::oracles::{block_tour_cost, order_cost, tsp_path_exact, tsp_path_heuristic};
use sos::rng::{sample_points, trial_seed, PortableRng};

const SEED: u64 = 1;

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn c1_toy_example() -> Outcome {
    let plan = plan_next_phase(100, 50, 70, &[0, 5, 15, 10]).map_err(|e| e.to_string())?;
    check(
        plan.bin_capacity == 40.0 && plan.bucket_sizes == [35, 15],
        format!(
            "C2 = {}, sizes = {:?}",
            plan.bin_capacity, plan.bucket_sizes
        ),
    )
}

fn c2_serpentine() -> Outcome {
    let mut grids = 0;
    for d in 1..=4usize {
        for exps in (0..d).map(|_| 0..=12u32).multi_cartesian_product() {
            if exps.iter().sum::<u32>() > 12 {
                continue;
            }
            let splits: Vec<usize> = exps.iter().map(|&e| 1usize << e).collect();
            let order = serpentine_order(&splits);
            if order.len() != splits.iter().product::<usize>()
                || order.iter().unique().count() != order.len()
            {
                return Err(format!("{splits:?} not covered"));
            }
            for w in order.windows(2) {
                if w[0]
                    .iter()
                    .zip(&w[1])
                    .map(|(a, b)| a.abs_diff(*b))
                    .sum::<usize>()
                    != 1
                {
                    return Err(format!("{splits:?}: {:?} -> {:?} not adjacent", w[0], w[1]));
                }
            }
            for (pos, v) in order.iter().enumerate() {
                if order_index(v, &splits) != pos + 1 {
                    return Err(format!("{splits:?}: order_index({v:?}) != {}", pos + 1));
                }
            }
            grids += 1;
        }
    }
    Ok(format!("{grids} grids checked"))
}

fn c3_oracles() -> Outcome {
    let mut rng = PortableRng::new(SEED);
    for i in 0..200 {
        let n = 1 + rng.below(8) as usize;
        let d = 1 + i % 3;
        let pts = sample_points(&mut rng, n, d, &DistributionSpec::Uniform);
        let exact = tsp_path_exact(&pts).map_err(|e| e.to_string())?.value;
        let brute = (0..n)
            .permutations(n)
            .map(|p| order_cost(&pts, &p))
            .fold(f64::INFINITY, f64::min);
        if (exact - brute).abs() > 1e-12 {
            return Err(format!("instance {i}: DP {exact} vs brute force {brute}"));
        }
        if tsp_path_heuristic(&pts).value < exact - 1e-12 {
            return Err(format!("instance {i}: heuristic below exact"));
        }
    }
    for i in 0..200 {
        let n = 2 + rng.below(13) as usize;
        let pts = sample_points(&mut rng, n, 1, &DistributionSpec::Uniform);
        let exact = tsp_path_exact(&pts).map_err(|e| e.to_string())?.value;
        let span = opt_sort_cost(pts.coords()).map_err(|e| e.to_string())?;
        if (exact - span).abs() > 1e-9 {
            return Err(format!("1-D instance {i}: {exact} vs span {span}"));
        }
    }
    Ok("200 + 200 instances".into())
}

fn c4_bin_timing() -> Outcome {
    let cfg = BinSimConfig::even(256, 256 * 100, 500, SEED, 20.0);
    let r = verify_bin_timing(&cfg).map_err(|e| e.to_string())?;
    let a4 = r.slack.iter().find(|s| s.a == 4.0).ok_or("no a=4 row")?;
    check(
        a4.overflow_fraction >= 0.95 && a4.fill_fraction >= 0.95,
        format!(
            "a=4: T >= {:.0} in {:.3}, T' <= {:.0} in {:.3} (median T {}, T' {})",
            a4.overflow_bound,
            a4.overflow_fraction,
            a4.fill_bound,
            a4.fill_fraction,
            r.overflow_time.median,
            r.fill_time.median
        ),
    )
}

fn c5_fill_before_overflow() -> Outcome {
    let cfg = ExperimentConfig::new(ExperimentMode::VerifyFill, vec![1 << 20], 1)
        .with_trials(50)
        .with_seed(SEED);
    let r = verify_fill_before_overflow(&cfg).map_err(|e| e.to_string())?;
    check(
        !r.vacuous && r.overall_success >= 0.95 && r.failure_rate <= 0.05,
        format!(
            "success {:.2} over {} boundaries, failure rate {:.2}",
            r.overall_success,
            r.boundaries.len(),
            r.failure_rate
        ),
    )
}

fn c6_c7_sort_scaling() -> (Outcome, Outcome) {
    let ns = vec![1 << 16, 1 << 18, 1 << 20, 1 << 22];
    let cfg = ExperimentConfig::new(ExperimentMode::Sweep, ns, 1)
        .with_trials(20)
        .with_seed(SEED);
    let report = match run_experiment(&cfg) {
        Ok(r) => r,
        Err(e) => return (Err(e.to_string()), Err(e.to_string())),
    };
    let norms = report
        .summary
        .sizes
        .iter()
        .map(|s| format!("{:.3}", s.normalized_ratio))
        .join(", ");
    let c6 = match &report.summary.fit {
        Some(fit) if report.summary.sizes.len() == 4 => check(
            fit.normalized_drift <= 1.25,
            format!(
                "ratio/log2^2 n = [{norms}], drift {:.3}",
                fit.normalized_drift
            ),
        ),
        _ => Err("sweep incomplete".into()),
    };
    let mut worst_sum: f64 = 0.0;
    let mut worst_between: f64 = 0.0;
    let mut checked = 0;
    let mut c7_ok = true;
    for t in report.trials.iter().filter(|t| !t.failed) {
        checked += 1;
        let b = &t.breakdown;
        let rel = (b.total() - t.cost).abs() / t.cost;
        worst_sum = worst_sum.max(rel);
        let per = b
            .between_buckets_by_subarray
            .iter()
            .copied()
            .fold(0.0, f64::max);
        worst_between = worst_between.max(per);
        c7_ok &= rel <= 1e-9 && per <= 2.0 && b.between_buckets <= 2.0 * t.trace.k() as f64;
    }
    let c7 = check(
        c7_ok && checked > 0,
        format!("{checked} trials, max relative gap {worst_sum:.1e}, max between-buckets per subarray {worst_between:.3}"),
    );
    (c6, c7)
}

fn c8_block_tour() -> Outcome {
    let n = 1 << 14;
    let part = BlockPartition::round_robin(2, compute_ell(n, 2.0).map_err(|e| e.to_string())?);
    let mut worst: f64 = 0.0;
    for r in 0..20 {
        let mut rng = PortableRng::new(trial_seed(SEED, r));
        let pts = sample_points(&mut rng, n, 2, &DistributionSpec::Uniform);
        worst = worst.max(block_tour_cost(&pts, &part).value / tsp_path_heuristic(&pts).value);
    }
    check(
        worst <= 15.0,
        format!("max block tour / heuristic = {worst:.3}"),
    )
}

fn c9_tsp_scaling() -> Outcome {
    let ns = (12..=16).map(|e| 1usize << e).collect();
    let cfg = ExperimentConfig::new(ExperimentMode::Sweep, ns, 2)
        .with_trials(10)
        .with_seed(SEED);
    let report = run_experiment(&cfg).map_err(|e| e.to_string())?;
    let norms = report
        .summary
        .sizes
        .iter()
        .map(|s| format!("{:.4}", s.normalized_ratio))
        .join(", ");
    match &report.summary.fit {
        Some(fit) if report.summary.sizes.len() == 5 => check(
            fit.normalized_drift <= 1.25,
            format!(
                "ratio/log2^2 n = [{norms}], drift {:.3}",
                fit.normalized_drift
            ),
        ),
        _ => Err("sweep incomplete".into()),
    }
}

fn c10_arrival_order() -> Outcome {
    let n = 1 << 10;
    let cfg = ExperimentConfig::new(ExperimentMode::Tsp, vec![n], 12).with_seed(SEED);
    let mut within = 0;
    let mut worst: f64 = 0.0;
    for r in 0..100 {
        let t = run_trial(&cfg, n, r).map_err(|e| e.to_string())?;
        if !t.trace.arrival_order_fallback {
            return Err("arrival-order mode not engaged".into());
        }
        worst = worst.max(t.ratio);
        within += usize::from(t.ratio <= 10.0);
    }
    check(
        within >= 95,
        format!("{within}/100 trials with ratio <= 10 (max {worst:.3})"),
    )
}

fn c11_determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut files = 0;
    for (i, (d, format)) in [
        (1, OutputFormat::Csv),
        (1, OutputFormat::Json),
        (2, OutputFormat::Csv),
    ]
    .into_iter()
    .enumerate()
    {
        let cfg = ExperimentConfig::new(ExperimentMode::Sweep, vec![1 << 12, 1 << 13], d)
            .with_trials(3)
            .with_seed(SEED);
        let mut written = Vec::new();
        for run in 0..2 {
            let report = run_experiment(&cfg).map_err(|e| e.to_string())?;
            written.push(
                emit_report(&report, &dir.path().join(format!("{i}-{run}")), format)
                    .map_err(|e| e.to_string())?,
            );
        }
        for (a, b) in written[0].iter().zip(&written[1]) {
            if std::fs::read(a).map_err(|e| e.to_string())?
                != std::fs::read(b).map_err(|e| e.to_string())?
            {
                return Err(format!("{a:?} differs between runs"));
            }
            files += 1;
        }
    }
    Ok(format!("{files} file pairs identical"))
}

fn c12_general_distribution() -> Outcome {
    let n = 1 << 18;
    let base = ExperimentConfig::new(ExperimentMode::Sort1d, vec![n], 1)
        .with_trials(10)
        .with_seed(SEED);
    let skewed = base
        .clone()
        .with_distribution(DistributionSpec::InverseCdf(Quantile::sqrt()));
    let u = run_experiment(&base)
        .map_err(|e| e.to_string())?
        .summary
        .sizes[0]
        .clone();
    let s = run_experiment(&skewed)
        .map_err(|e| e.to_string())?
        .summary
        .sizes[0]
        .clone();
    let rel = (s.mean_ratio / u.mean_ratio).max(u.mean_ratio / s.mean_ratio);
    check(
        s.failure_rate <= 0.1 && rel <= 2.0,
        format!(
            "sqrt ratio {:.1} vs uniform {:.1} (x{rel:.3}), failure rate {:.2}",
            s.mean_ratio, u.mean_ratio, s.failure_rate
        ),
    )
}

fn report(id: u32, name: &str, start: Instant, outcome: &Outcome) -> bool {
    let secs = start.elapsed().as_secs_f64();
    match outcome {
        Ok(detail) => println!("criterion {id:>2} PASS  {name}: {detail} [{secs:.1}s]"),
        Err(detail) => println!("criterion {id:>2} FAIL  {name}: {detail} [{secs:.1}s]"),
    }
    outcome.is_ok()
}

fn main() {
    let mut all = true;
    let t = Instant::now();
    all &= report(1, "toy example", t, &c1_toy_example());
    let t = Instant::now();
    all &= report(2, "serpentine order", t, &c2_serpentine());
    let t = Instant::now();
    all &= report(3, "oracle soundness", t, &c3_oracles());
    let t = Instant::now();
    all &= report(4, "balls-into-bins timing", t, &c4_bin_timing());
    let t = Instant::now();
    all &= report(5, "fill before overflow", t, &c5_fill_before_overflow());
    let t = Instant::now();
    let (c6, c7) = c6_c7_sort_scaling();
    all &= report(6, "1-D ratio scaling", t, &c6);
    all &= report(7, "cost decomposition", t, &c7);
    let t = Instant::now();
    all &= report(8, "block tour approximation", t, &c8_block_tour());
    let t = Instant::now();
    all &= report(9, "d-D ratio scaling", t, &c9_tsp_scaling());
    let t = Instant::now();
    all &= report(10, "arrival-order mode", t, &c10_arrival_order());
    let t = Instant::now();
    all &= report(11, "determinism", t, &c11_determinism());
    let t = Instant::now();
    all &= report(12, "general distribution", t, &c12_general_distribution());
    if !all {
        std::process::exit(1);
    }
}
