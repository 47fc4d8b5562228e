//! Balls-into-bins simulation of one phase in isolation.

use serde::{Deserialize, Serialize};

use crate::engine::split_evenly;
use crate::error::{Error, Result};
use crate::rng::{trial_seed, PortableRng};

/// Slack multipliers `a` reported by [`verify_bin_timing`]; the pass flag uses
/// the last one.
pub const SLACK_MULTIPLIERS: [f64; 3] = [1.0, 2.0, 4.0];
pub const PASS_FRACTION: f64 = 0.95;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinSimConfig {
    /// Per-bin capacities; they differ by at most one.
    pub capacities: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    /// `log2 n` of the instance the bins stand for.
    pub log2_n: f64,
}

impl BinSimConfig {
    /// `k` bins sharing `total` cells as evenly as possible.
    pub fn even(k: usize, total: usize, trials: usize, seed: u64, log2_n: f64) -> Self {
        Self {
            capacities: split_evenly(total, k),
            trials,
            seed,
            log2_n,
        }
    }

    pub fn bins(&self) -> usize {
        self.capacities.len()
    }

    /// Total capacity `M`.
    pub fn total(&self) -> usize {
        self.capacities.iter().sum()
    }

    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = (self.capacities.iter().min(), self.capacities.iter().max());
        match (lo, hi) {
            (Some(&lo), Some(&hi)) if hi - lo <= 1 && hi > 0 => {}
            _ => {
                return Err(Error::InvalidConfig(
                    "capacities must be non-empty, positive and within one".into(),
                ))
            }
        }
        if self.log2_n.is_nan() || self.log2_n <= 0.0 {
            return Err(Error::InvalidConfig("log2_n must be positive".into()));
        }
        Ok(())
    }
}

/// Loads after `t` throws. A ball that lands in a full bin is discarded.
#[derive(Debug, Clone, PartialEq)]
pub struct BinState {
    pub loads: Vec<usize>,
    pub t: usize,
    /// Balls accepted before the first one hit a full bin (`T`).
    pub first_overflow: Option<usize>,
    /// Throws until every bin was full (`T'`).
    pub all_full: Option<usize>,
    full_bins: usize,
}

impl BinState {
    pub fn new(k: usize) -> Self {
        Self {
            loads: vec![0; k],
            t: 0,
            first_overflow: None,
            all_full: None,
            full_bins: 0,
        }
    }

    /// Throws one ball into `bin`; returns whether it was accepted.
    pub fn throw(&mut self, bin: usize, capacities: &[usize]) -> bool {
        self.t += 1;
        if self.loads[bin] == capacities[bin] {
            self.first_overflow.get_or_insert(self.t - 1);
            return false;
        }
        self.loads[bin] += 1;
        if self.loads[bin] == capacities[bin] {
            self.full_bins += 1;
            if self.full_bins == capacities.len() {
                self.all_full = Some(self.t);
            }
        }
        true
    }
}

/// Throws uniform balls until every bin is full.
pub fn simulate_bins(capacities: &[usize], rng: &mut PortableRng) -> BinState {
    let mut state = BinState::new(capacities.len());
    while state.all_full.is_none() {
        let bin = rng.below(capacities.len() as u64) as usize;
        state.throw(bin, capacities);
    }
    // With every bin full the next ball overflows.
    state.first_overflow.get_or_insert(state.t);
    state
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlackRow {
    pub a: f64,
    /// `M - a·M/sqrt(log2 n)`.
    pub overflow_bound: f64,
    /// `M + a·M/sqrt(log2 n)`.
    pub fill_bound: f64,
    pub overflow_fraction: f64,
    pub fill_fraction: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quantiles {
    pub min: f64,
    pub p05: f64,
    pub median: f64,
    pub p95: f64,
    pub max: f64,
    pub mean: f64,
}

impl Quantiles {
    pub fn of(values: &[f64]) -> Self {
        let mut v = values.to_vec();
        v.sort_by(f64::total_cmp);
        let q = |p: f64| {
            if v.is_empty() {
                return f64::NAN;
            }
            v[((v.len() - 1) as f64 * p).round() as usize]
        };
        Self {
            min: q(0.0),
            p05: q(0.05),
            median: q(0.5),
            p95: q(0.95),
            max: q(1.0),
            mean: v.iter().sum::<f64>() / v.len() as f64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinTimingReport {
    pub bins: usize,
    pub total: usize,
    pub trials: usize,
    pub log2_n: f64,
    pub overflow_time: Quantiles,
    pub fill_time: Quantiles,
    pub slack: Vec<SlackRow>,
    pub pass: bool,
}

/// Runs the simulation `trials` times and checks the overflow and fill
/// times against `M ∓ a·M/sqrt(log2 n)`.
pub fn verify_bin_timing(cfg: &BinSimConfig) -> Result<BinTimingReport> {
    cfg.validate()?;
    let states: Vec<BinState> = (0..cfg.trials)
        .map(|r| {
            simulate_bins(
                &cfg.capacities,
                &mut PortableRng::new(trial_seed(cfg.seed, r as u64)),
            )
        })
        .collect();
    let t: Vec<f64> = states
        .iter()
        .map(|s| s.first_overflow.unwrap_or(0) as f64)
        .collect();
    let tp: Vec<f64> = states
        .iter()
        .map(|s| s.all_full.unwrap_or(0) as f64)
        .collect();
    let m = cfg.total() as f64;
    let frac = |hits: usize| {
        if cfg.trials == 0 {
            0.0
        } else {
            hits as f64 / cfg.trials as f64
        }
    };
    let slack: Vec<SlackRow> = SLACK_MULTIPLIERS
        .iter()
        .map(|&a| {
            let delta = a * m / cfg.log2_n.sqrt();
            let (lo, hi) = (m - delta, m + delta);
            SlackRow {
                a,
                overflow_bound: lo,
                fill_bound: hi,
                overflow_fraction: frac(t.iter().filter(|&&x| x >= lo).count()),
                fill_fraction: frac(tp.iter().filter(|&&x| x <= hi).count()),
            }
        })
        .collect();
    let last = slack.last().expect("multipliers are non-empty");
    let pass = cfg.trials > 0
        && last.overflow_fraction >= PASS_FRACTION
        && last.fill_fraction >= PASS_FRACTION;
    Ok(BinTimingReport {
        bins: cfg.bins(),
        total: cfg.total(),
        trials: cfg.trials,
        log2_n: cfg.log2_n,
        overflow_time: Quantiles::of(&t),
        fill_time: Quantiles::of(&tp),
        slack,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_bin_is_deterministic() {
        let cfg = BinSimConfig {
            capacities: vec![7],
            trials: 20,
            seed: 1,
            log2_n: 10.0,
        };
        let r = verify_bin_timing(&cfg).unwrap();
        assert_eq!(r.overflow_time.min, 7.0);
        assert_eq!(r.overflow_time.max, 7.0);
        assert_eq!(r.fill_time.min, 7.0);
        assert_eq!(r.fill_time.max, 7.0);
        assert!(r.pass);
    }

    #[test]
    fn two_unit_bins_by_enumeration() {
        // All 2^4 sequences of four throws: P(T' = t) for t = 2, 3, 4.
        let mut hist = [0usize; 5];
        for seq in 0..16u32 {
            let mut s = BinState::new(2);
            for k in 0..4 {
                s.throw(((seq >> k) & 1) as usize, &[1, 1]);
            }
            if let Some(t) = s.all_full {
                hist[t] += 1;
            }
        }
        assert_eq!(&hist[2..], &[8, 4, 2]);
        // Monte Carlo mean of T' approaches 1 + 2 = 3.
        let mut rng = PortableRng::new(11);
        let mean = (0..20_000)
            .map(|_| simulate_bins(&[1, 1], &mut rng).all_full.unwrap() as f64)
            .sum::<f64>()
            / 20_000.0;
        assert!((mean - 3.0).abs() < 0.05, "{mean}");
    }

    #[test]
    fn overflow_precedes_fill() {
        let mut rng = PortableRng::new(2);
        for _ in 0..50 {
            let s = simulate_bins(&[3, 3, 2, 2], &mut rng);
            assert!(s.first_overflow.unwrap() <= s.all_full.unwrap());
            assert_eq!(s.loads, vec![3, 3, 2, 2]);
        }
    }

    #[test]
    fn rejects_uneven_capacities() {
        let cfg = BinSimConfig {
            capacities: vec![3, 1],
            trials: 1,
            seed: 0,
            log2_n: 4.0,
        };
        assert!(verify_bin_timing(&cfg).is_err());
    }
}
