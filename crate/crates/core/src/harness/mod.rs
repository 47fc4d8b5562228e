//! Monte Carlo experiments over the online algorithm.
//!
//! Trials are independent: trial `r` draws its points from a generator seeded
//! with `seed ^ r`, runs the engine and compares the array cost with an
//! offline estimate. Trials run in parallel and are aggregated in trial
//! order, so reports depend only on the configuration and seed.

mod bins;
mod report;

pub use bins::{
    simulate_bins, verify_bin_timing, BinSimConfig, BinState, BinTimingReport, Quantiles, SlackRow,
    PASS_FRACTION, SLACK_MULTIPLIERS,
};
pub use report::{
    emit_report, summary_to_json, trials_to_csv, validate_summary, OutputFormat, CSV_COLUMNS,
    CSV_SCHEMA_VERSION, SUMMARY_SCHEMA_VERSION,
};

use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::engine::{run_auto, Layout, RegionKind, RunTrace};
use crate::error::{Error, Result};
use crate::model::{
    compute_ell, log2_pow, opt_sort_cost, tour_cost, AlgorithmConfig, DistributionSpec,
    PlacementArray, Quantile,
};
use crate::oracles::{tsp_path_heuristic, OracleEstimate};
use crate::rng::{sample_points, trial_seed, PortableRng};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentMode {
    Sort1d,
    Tsp,
    VerifyBins,
    VerifyFill,
    Sweep,
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub mode: ExperimentMode,
    pub ns: Vec<usize>,
    pub d: usize,
    pub log_exponent: f64,
    pub backyard_constant: f64,
    pub trials: usize,
    pub seed: u64,
    pub distribution: DistributionSpec,
}

impl ExperimentConfig {
    pub fn new(mode: ExperimentMode, ns: Vec<usize>, d: usize) -> Self {
        Self {
            mode,
            ns,
            d,
            log_exponent: 2.0,
            backyard_constant: 100.0,
            trials: 10,
            seed: 0,
            distribution: DistributionSpec::Uniform,
        }
    }

    pub fn with_trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_log_exponent(mut self, p: f64) -> Self {
        self.log_exponent = p;
        self
    }

    pub fn with_backyard_constant(mut self, c: f64) -> Self {
        self.backyard_constant = c;
        self
    }

    pub fn with_distribution(mut self, distribution: DistributionSpec) -> Self {
        self.distribution = distribution;
        self
    }

    /// Engine configuration for size `n` and the given trial seed.
    pub fn algorithm(&self, n: usize, seed: u64) -> AlgorithmConfig {
        AlgorithmConfig::new(n, self.d)
            .with_log_exponent(self.log_exponent)
            .with_backyard_constant(self.backyard_constant)
            .with_seed(seed)
            .with_distribution(self.distribution.clone())
    }
}

/// Parses `uniform` or `cdf:<file>`.
pub fn parse_distribution(arg: &str) -> Result<DistributionSpec> {
    if arg == "uniform" {
        return Ok(DistributionSpec::Uniform);
    }
    match arg.strip_prefix("cdf:") {
        Some(path) => {
            let spec = DistributionSpec::InverseCdf(Quantile::from_table_file(Path::new(path))?);
            spec.validate()?;
            Ok(spec)
        }
        None => Err(Error::Parse(format!(
            "unknown distribution {arg:?}; expected uniform or cdf:<file>"
        ))),
    }
}

/// Array cost split by the kind of cell pair each edge joins.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CostBreakdown {
    /// Both cells in the same bucket.
    pub within_buckets: f64,
    /// Different buckets of the same subarray.
    pub between_buckets: f64,
    /// Buckets of different subarrays.
    pub between_subarrays: f64,
    /// At least one cell in the backyard.
    pub backyard: f64,
    /// `between_buckets` split by subarray, phase 1 first.
    pub between_buckets_by_subarray: Vec<f64>,
}

impl CostBreakdown {
    pub fn total(&self) -> f64 {
        self.within_buckets + self.between_buckets + self.between_subarrays + self.backyard
    }
}

/// Attributes every edge `(c, c+1)` of a full array to its region pair.
pub fn decompose_cost(
    array: &PlacementArray,
    layout: &Layout,
    phases: usize,
) -> Result<CostBreakdown> {
    let n = array.len();
    if !array.is_full() {
        return Err(Error::IncompleteArray(array.filled_count()));
    }
    let mut region_of = vec![usize::MAX; n];
    for (r, region) in layout.regions.iter().enumerate() {
        region_of[region.start..region.start + region.len].fill(r);
    }
    let mut out = CostBreakdown {
        between_buckets_by_subarray: vec![0.0; phases],
        ..Default::default()
    };
    for c in 0..n.saturating_sub(1) {
        let w =
            crate::model::distance(array.get(c).expect("full"), array.get(c + 1).expect("full"));
        let (ra, rb) = (region_of[c], region_of[c + 1]);
        let kind = |r: usize| layout.regions.get(r).map(|x| x.kind);
        match (kind(ra), kind(rb)) {
            (Some(RegionKind::Backyard), _) | (_, Some(RegionKind::Backyard)) => out.backyard += w,
            _ if ra == rb => out.within_buckets += w,
            (
                Some(RegionKind::Bucket { phase: pa, .. }),
                Some(RegionKind::Bucket { phase: pb, .. }),
            ) if pa == pb => {
                out.between_buckets += w;
                if let Some(slot) = out.between_buckets_by_subarray.get_mut(pa as usize - 1) {
                    *slot += w;
                }
            }
            _ => out.between_subarrays += w,
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialResult {
    pub n: usize,
    pub d: usize,
    pub p: f64,
    pub trial: usize,
    pub seed: u64,
    pub cost: f64,
    pub opt: OracleEstimate,
    pub ratio: f64,
    pub failed: bool,
    pub breakdown: CostBreakdown,
    pub trace: RunTrace,
}

/// `cost / opt`, with `0/0` read as 1.
pub fn competitive_ratio(cost: f64, opt: f64) -> f64 {
    if opt > 0.0 {
        cost / opt
    } else if cost == 0.0 {
        1.0
    } else {
        f64::INFINITY
    }
}

/// One seeded run at size `n`. The offline estimate is the exact sorted span
/// for `d = 1` and the 2-opt heuristic otherwise.
pub fn run_trial(cfg: &ExperimentConfig, n: usize, trial: usize) -> Result<TrialResult> {
    let seed = trial_seed(cfg.seed, trial as u64);
    let alg = cfg.algorithm(n, seed);
    alg.validate()?;
    let mut rng = PortableRng::new(seed);
    let points = sample_points(&mut rng, n, cfg.d, &cfg.distribution);
    let out = run_auto(&alg, &points)?;
    let cost = tour_cost(&out.array)?;
    let opt = if cfg.d == 1 {
        OracleEstimate::exact(opt_sort_cost(points.coords())?, n, 1)
    } else {
        tsp_path_heuristic(&points)
    };
    let breakdown = decompose_cost(&out.array, &out.layout, out.trace.k())?;
    Ok(TrialResult {
        n,
        d: cfg.d,
        p: cfg.log_exponent,
        trial,
        seed,
        cost,
        opt,
        ratio: competitive_ratio(cost, opt.value),
        failed: out.trace.failed,
        breakdown,
        trace: out.trace,
    })
}

/// Aggregate over the trials at one `n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SizeSummary {
    pub n: usize,
    pub ell: u32,
    pub trials: usize,
    pub mean_ratio: f64,
    pub median_ratio: f64,
    pub p95_ratio: f64,
    /// `mean_ratio / log2(n)^2`.
    pub normalized_ratio: f64,
    pub failure_rate: f64,
    pub mean_k: f64,
    pub arrival_order_fallback: bool,
    /// Fraction of runs in which every subarray filled before the next one
    /// overflowed.
    pub fill_before_overflow_rate: f64,
    pub mean_within_buckets: f64,
    pub mean_between_buckets: f64,
    pub mean_between_subarrays: f64,
    pub mean_backyard: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SkippedSize {
    pub n: usize,
    pub reason: String,
}

/// Least-squares fit of `mean_ratio ≈ c · log2(n)^2` through the origin.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScalingFit {
    pub slope: f64,
    /// Largest normalized ratio divided by the one at the smallest `n`.
    pub normalized_drift: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSummary {
    pub schema_version: u32,
    pub mode: ExperimentMode,
    pub d: usize,
    pub p: f64,
    pub backyard_constant: f64,
    pub trials: usize,
    pub seed: u64,
    pub distribution: String,
    /// `exact` for d = 1; otherwise the ratios are against a heuristic
    /// upper bound on the optimum and so understate the true ratio.
    pub opt_kind: String,
    pub sizes: Vec<SizeSummary>,
    pub skipped: Vec<SkippedSize>,
    pub fit: Option<ScalingFit>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub summary: ExperimentSummary,
    pub trials: Vec<TrialResult>,
}

fn mean(v: impl Iterator<Item = f64>) -> f64 {
    let (s, c) = v.fold((0.0, 0usize), |(s, c), x| (s + x, c + 1));
    if c == 0 {
        f64::NAN
    } else {
        s / c as f64
    }
}

/// Summary of the trials at one size.
pub fn summarize_size(n: usize, ell: u32, trials: &[TrialResult]) -> SizeSummary {
    let ratios: Vec<f64> = trials.iter().map(|t| t.ratio).collect();
    let q = Quantiles::of(&ratios);
    let count = trials.len().max(1) as f64;
    let mean_ratio = mean(ratios.iter().copied());
    SizeSummary {
        n,
        ell,
        trials: trials.len(),
        mean_ratio,
        median_ratio: q.median,
        p95_ratio: q.p95,
        normalized_ratio: mean_ratio / log2_pow(n, 2.0),
        failure_rate: trials.iter().filter(|t| t.failed).count() as f64 / count,
        mean_k: mean(trials.iter().map(|t| t.trace.k() as f64)),
        arrival_order_fallback: trials.iter().any(|t| t.trace.arrival_order_fallback),
        fill_before_overflow_rate: trials
            .iter()
            .filter(|t| t.trace.filled_sequentially())
            .count() as f64
            / count,
        mean_within_buckets: mean(trials.iter().map(|t| t.breakdown.within_buckets)),
        mean_between_buckets: mean(trials.iter().map(|t| t.breakdown.between_buckets)),
        mean_between_subarrays: mean(trials.iter().map(|t| t.breakdown.between_subarrays)),
        mean_backyard: mean(trials.iter().map(|t| t.breakdown.backyard)),
    }
}

/// Fits the normalized ratios of a sweep; `None` with fewer than two sizes.
pub fn fit_scaling(sizes: &[SizeSummary]) -> Option<ScalingFit> {
    if sizes.len() < 2 {
        return None;
    }
    let (num, den) = sizes.iter().fold((0.0, 0.0), |(a, b), s| {
        let l = log2_pow(s.n, 2.0);
        (a + s.mean_ratio * l, b + l * l)
    });
    let first = sizes.iter().min_by_key(|s| s.n)?.normalized_ratio;
    let max = sizes
        .iter()
        .map(|s| s.normalized_ratio)
        .fold(f64::NEG_INFINITY, f64::max);
    Some(ScalingFit {
        slope: num / den,
        normalized_drift: max / first,
    })
}

/// Runs all trials at every configured size. Sizes too small for the phase
/// layout are listed as skipped.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    if cfg.d == 0 {
        return Err(Error::InvalidConfig("d must be at least 1".into()));
    }
    let mut sizes = Vec::new();
    let mut skipped = Vec::new();
    let mut all = Vec::new();
    for &n in &cfg.ns {
        let ell = match compute_ell(n, cfg.log_exponent) {
            Ok(ell) => ell,
            Err(e @ Error::InstanceTooSmall { .. }) => {
                skipped.push(SkippedSize {
                    n,
                    reason: e.to_string(),
                });
                continue;
            }
            Err(e) => return Err(e),
        };
        cfg.algorithm(n, cfg.seed).validate()?;
        let trials = (0..cfg.trials)
            .into_par_iter()
            .map(|r| run_trial(cfg, n, r))
            .collect::<Result<Vec<_>>>()?;
        sizes.push(summarize_size(n, ell, &trials));
        all.extend(trials);
    }
    let fit = fit_scaling(&sizes);
    let summary = ExperimentSummary {
        schema_version: SUMMARY_SCHEMA_VERSION,
        mode: cfg.mode,
        d: cfg.d,
        p: cfg.log_exponent,
        backyard_constant: cfg.backyard_constant,
        trials: cfg.trials,
        seed: cfg.seed,
        distribution: cfg.distribution.label(),
        opt_kind: if cfg.d == 1 {
            "exact"
        } else {
            "heuristic_upper"
        }
        .into(),
        sizes,
        skipped,
        fit,
    };
    Ok(ExperimentReport {
        summary,
        trials: all,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryStats {
    /// Boundary between `A_j` and `A_{j+1}`.
    pub j: usize,
    pub runs: usize,
    pub successes: usize,
    pub fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FillReport {
    pub runs: usize,
    pub boundaries: Vec<BoundaryStats>,
    /// Runs in which every boundary held; runs with one phase count as held.
    pub overall_success: f64,
    pub failure_rate: f64,
    /// No run had more than one phase, so there was nothing to check.
    pub vacuous: bool,
}

/// Per-boundary fill-before-overflow statistics over a set of runs.
pub fn fill_report<'a>(traces: impl IntoIterator<Item = &'a RunTrace>) -> FillReport {
    let mut boundaries: Vec<BoundaryStats> = Vec::new();
    let (mut runs, mut ok, mut failed) = (0usize, 0usize, 0usize);
    for t in traces {
        runs += 1;
        ok += usize::from(t.filled_sequentially());
        failed += usize::from(t.failed);
        for (j, &held) in t.fill_before_overflow.iter().enumerate() {
            if boundaries.len() <= j {
                boundaries.push(BoundaryStats {
                    j: j + 1,
                    runs: 0,
                    successes: 0,
                    fraction: 0.0,
                });
            }
            boundaries[j].runs += 1;
            boundaries[j].successes += usize::from(held);
        }
    }
    for b in &mut boundaries {
        b.fraction = b.successes as f64 / b.runs as f64;
    }
    let denom = runs.max(1) as f64;
    FillReport {
        runs,
        vacuous: boundaries.is_empty(),
        boundaries,
        overall_success: ok as f64 / denom,
        failure_rate: failed as f64 / denom,
    }
}

/// Runs the experiment at its first size and reports fill-before-overflow.
pub fn verify_fill_before_overflow(cfg: &ExperimentConfig) -> Result<FillReport> {
    let n = *cfg.ns.first().ok_or(Error::EmptyInput)?;
    let single = ExperimentConfig {
        ns: vec![n],
        ..cfg.clone()
    };
    let report = run_experiment(&single)?;
    if let Some(s) = report.summary.skipped.first() {
        return Err(Error::InvalidConfig(s.reason.clone()));
    }
    Ok(fill_report(report.trials.iter().map(|t| &t.trace)))
}
