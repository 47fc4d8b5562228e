//! The phase machine shared by the 1-D sorting mode and the d-D TSP mode.
//!
//! The array is carved into subarrays `A_1, A_2, ...` of lengths
//! `⌊n/2⌋, ⌊n/4⌋, ...`, each cut into buckets bound to keys. Phase `i` uses
//! `K_i = 2^(ℓ-i+1)` keys; every key of phase `i+1` is the union of two
//! consecutive keys of phase `i`. An arriving point goes to its key's bucket
//! in the oldest subarray that still has room for it. When every designated
//! bucket is full the current phase has overflowed: either the next subarray
//! is planned from the leftovers (see [`plan_next_phase`]) or, once fewer
//! than `backyard_constant · log^p n` cells remain, the rest of the array
//! becomes the backyard `B`. If `B` itself runs out the run has failed and
//! the remaining points take the lowest empty cells.

mod domain;
mod phase;
mod trace;

pub use domain::{BlockDomain, DomainAdapter, IntervalDomain};
pub use phase::{plan_next_phase, split_evenly, PhasePlan};
pub use trace::{PhaseRecord, RunTrace, TransitionKind, TransitionRecord};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::merged_key;
use crate::interior::{
    AdvSort, ArrivalOrder, BucketPlacer, GridTsp, InteriorStrategy, StrategyKind,
};
use crate::model::{compute_ell, AlgorithmConfig, PlacementArray, PointSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Phase,
    Final,
    Failed,
}

/// What a contiguous run of cells belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum RegionKind {
    Bucket { phase: u32, index: usize },
    Backyard,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Region {
    pub start: usize,
    pub len: usize,
    #[serde(flatten)]
    pub kind: RegionKind,
}

/// Cell ownership of a finished run, ordered by start cell. Zero-length
/// buckets are omitted.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Layout {
    pub regions: Vec<Region>,
}

impl Layout {
    /// Region containing `cell`.
    pub fn region_of(&self, cell: usize) -> Option<&Region> {
        let i = self.regions.partition_point(|r| r.start <= cell);
        self.regions[..i].last().filter(|r| cell < r.start + r.len)
    }

    pub fn allocated(&self) -> usize {
        self.regions.iter().map(|r| r.len).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlacementReport {
    pub cell: usize,
    /// Phase whose bucket received the point; `None` for backyard and
    /// failure placements.
    pub phase: Option<u32>,
    pub mode: Mode,
    /// Transitions triggered by this arrival, in order.
    pub transitions: usize,
}

struct Bucket {
    start: usize,
    placer: Box<dyn BucketPlacer>,
}

pub struct PhaseState {
    index: u32,
    start: usize,
    len: usize,
    filled: usize,
    buckets: Vec<Bucket>,
    plan: Option<PhasePlan>,
}

impl PhaseState {
    pub fn index(&self) -> u32 {
        self.index
    }

    /// Bucket count `K_i`.
    pub fn bucket_count(&self) -> usize {
        self.buckets.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn filled(&self) -> usize {
        self.filled
    }

    pub fn bucket_capacities(&self) -> Vec<usize> {
        self.buckets.iter().map(|b| b.placer.capacity()).collect()
    }

    pub fn bucket_fills(&self) -> Vec<usize> {
        self.buckets.iter().map(|b| b.placer.fill()).collect()
    }

    /// The capacity plan this phase was spawned with (`None` for phase 1).
    pub fn plan(&self) -> Option<&PhasePlan> {
        self.plan.as_ref()
    }

    fn is_full(&self) -> bool {
        self.filled == self.len
    }
}

struct Backyard {
    start: usize,
    placer: Box<dyn BucketPlacer>,
}

/// Bucket that `x` is designated to in phase `phase`.
pub fn designated_bucket(phase: u32, x: &[f64], domain: &dyn DomainAdapter) -> usize {
    merged_key(domain.fine_key(x), phase)
}

pub struct Engine<'a> {
    config: AlgorithmConfig,
    ell: u32,
    threshold: f64,
    domain: &'a dyn DomainAdapter,
    strategy: &'a dyn InteriorStrategy,
    array: PlacementArray,
    phases: Vec<PhaseState>,
    backyard: Option<Backyard>,
    mode: Mode,
    next_free: usize,
    low_empty: usize,
    arrivals: usize,
    trace: RunTrace,
    scratch: Vec<f64>,
}

impl<'a> Engine<'a> {
    /// Sets up phase 1: `A_1` is the first `⌊n/2⌋` cells, cut into `2^ℓ`
    /// buckets of `⌊A_1/K_1⌋` or `⌊A_1/K_1⌋ + 1` cells.
    pub fn new(
        config: AlgorithmConfig,
        domain: &'a dyn DomainAdapter,
        strategy: &'a dyn InteriorStrategy,
    ) -> Result<Self> {
        config.validate()?;
        let ell = compute_ell(config.n, config.log_exponent)?;
        let k1 = 1usize << ell;
        if domain.fine_count() != k1 {
            return Err(Error::InvalidConfig(format!(
                "domain provides {} keys, phase 1 needs {k1}",
                domain.fine_count()
            )));
        }
        if domain.dim() != config.d {
            return Err(Error::InvalidConfig(format!(
                "domain dimension {} differs from configured {}",
                domain.dim(),
                config.d
            )));
        }
        let n = config.n;
        let trace = RunTrace {
            n,
            d: config.d,
            ell,
            log_exponent: config.log_exponent,
            backyard_constant: config.backyard_constant,
            strategy: strategy.kind(),
            arrival_order_fallback: false,
            phases: Vec::new(),
            transitions: Vec::new(),
            backyard_start: None,
            backyard_len: 0,
            backyard_placements: 0,
            failed: false,
            failed_at: None,
            failure_placements: 0,
            fill_before_overflow: Vec::new(),
        };
        let mut engine = Self {
            threshold: config.backyard_threshold(),
            array: PlacementArray::new(n, config.d),
            scratch: vec![0.0; config.d],
            config,
            ell,
            domain,
            strategy,
            phases: Vec::new(),
            backyard: None,
            mode: Mode::Phase,
            next_free: 0,
            low_empty: 0,
            arrivals: 0,
            trace,
        };
        let a1 = n / 2;
        let sizes = split_evenly(a1, k1);
        engine.open_phase(1, sizes, a1 as f64 / k1 as f64, 0, None);
        Ok(engine)
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn phases(&self) -> &[PhaseState] {
        &self.phases
    }

    pub fn array(&self) -> &PlacementArray {
        &self.array
    }

    pub fn trace(&self) -> &RunTrace {
        &self.trace
    }

    pub fn arrivals(&self) -> usize {
        self.arrivals
    }

    fn open_phase(
        &mut self,
        index: u32,
        sizes: Vec<usize>,
        bin_capacity: f64,
        placed_prev: usize,
        plan: Option<PhasePlan>,
    ) {
        let start = self.next_free;
        let mut at = start;
        let buckets = sizes
            .iter()
            .map(|&size| {
                let b = Bucket {
                    start: at,
                    placer: self.strategy.open(size, self.config.d),
                };
                at += size;
                b
            })
            .collect();
        let len = at - start;
        self.next_free = at;
        self.trace.phases.push(PhaseRecord {
            index,
            buckets: sizes.len(),
            start_cell: start,
            len,
            bin_capacity,
            placed_prev,
            started_at: self.arrivals,
            overflow_at: None,
            filled_at: None,
            overflow_time: None,
            fill_time: None,
            placed_at_overflow: None,
            clamped_bins: plan.as_ref().map_or(0, |p| p.clamped_bins),
            deficit: plan.as_ref().map_or(0, |p| p.deficit),
        });
        self.phases.push(PhaseState {
            index,
            start,
            len,
            filled: 0,
            buckets,
            plan,
        });
    }

    /// Places one arriving point.
    pub fn place(&mut self, x: &[f64]) -> Result<PlacementReport> {
        if self.array.is_full() {
            return Err(Error::ArrayFull);
        }
        let fine = self.domain.fine_key(x);
        let transitions_before = self.trace.transitions.len();
        let (cell, phase) = loop {
            if let Some((p, key)) = self.open_bucket_for(fine) {
                break (self.place_in_bucket(p, key, x)?, Some(self.phases[p].index));
            }
            match self.mode {
                Mode::Phase => self.on_overflow(),
                Mode::Final => match self.place_in_backyard(x)? {
                    Some(cell) => break (cell, None),
                    None => {
                        self.mode = Mode::Failed;
                        self.trace.failed = true;
                        self.trace.failed_at = Some(self.arrivals);
                        self.record_transition(TransitionKind::Failed);
                    }
                },
                Mode::Failed => break (self.place_anywhere(x)?, None),
            }
        };
        self.arrivals += 1;
        Ok(PlacementReport {
            cell,
            phase,
            mode: self.mode,
            transitions: self.trace.transitions.len() - transitions_before,
        })
    }

    /// Oldest phase whose bucket for this key still has room.
    fn open_bucket_for(&self, fine: usize) -> Option<(usize, usize)> {
        self.phases.iter().enumerate().find_map(|(p, ph)| {
            if ph.is_full() {
                return None;
            }
            let key = merged_key(fine, ph.index);
            (!ph.buckets[key - 1].placer.is_full()).then_some((p, key))
        })
    }

    fn place_in_bucket(&mut self, p: usize, key: usize, x: &[f64]) -> Result<usize> {
        let phase_index = self.phases[p].index;
        self.domain.rescale(x, phase_index, key, &mut self.scratch);
        let bucket = &mut self.phases[p].buckets[key - 1];
        let cell = bucket.start + bucket.placer.place(&self.scratch)?;
        self.array.write(cell, x)?;
        self.note_phase_fill(p);
        Ok(cell)
    }

    fn note_phase_fill(&mut self, p: usize) {
        let ph = &mut self.phases[p];
        ph.filled += 1;
        if ph.is_full() {
            let rec = &mut self.trace.phases[p];
            rec.filled_at = Some(self.arrivals);
            rec.fill_time = Some(self.arrivals - rec.started_at + 1);
        }
    }

    fn record_transition(&mut self, kind: TransitionKind) {
        self.trace.transitions.push(TransitionRecord {
            arrival: self.arrivals,
            kind,
        });
    }

    /// The current phase has overflowed: record its timing, then spawn the
    /// next phase or open the backyard.
    fn on_overflow(&mut self) {
        let p = self.phases.len() - 1;
        let (filled, k_cur) = (self.phases[p].filled, self.phases[p].buckets.len());
        let rec = &mut self.trace.phases[p];
        rec.overflow_at = Some(self.arrivals);
        rec.overflow_time = Some(self.arrivals - rec.started_at);
        rec.placed_at_overflow = Some(filled);

        let remaining = self.config.n - self.next_free;
        let next_index = self.phases[p].index + 1;
        let next_len = self.config.n >> next_index;
        if (remaining as f64) < self.threshold || k_cur < 2 || next_len == 0 {
            self.enter_final_phase();
        } else {
            self.spawn_next_phase();
        }
    }

    /// Allocates `A_{i+1}` right after `A_i` with bucket sizes from
    /// [`plan_next_phase`].
    fn spawn_next_phase(&mut self) {
        let cur = self.phases.last().expect("phase 1 exists");
        let next_index = cur.index + 1;
        let next_len = self.config.n >> next_index;
        let leftovers: Vec<usize> = cur
            .buckets
            .iter()
            .map(|b| b.placer.capacity() - b.placer.fill())
            .collect();
        let plan = plan_next_phase(cur.len, next_len, cur.filled, &leftovers)
            .expect("leftovers are consistent with the phase fill count");
        let placed_prev = cur.filled;
        self.record_transition(TransitionKind::Phase { index: next_index });
        self.open_phase(
            next_index,
            plan.bucket_sizes.clone(),
            plan.bin_capacity,
            placed_prev,
            Some(plan),
        );
    }

    /// Turns every unallocated cell into the backyard.
    fn enter_final_phase(&mut self) {
        debug_assert_eq!(self.mode, Mode::Phase);
        let start = self.next_free;
        let len = self.config.n - start;
        self.backyard = Some(Backyard {
            start,
            placer: self.strategy.open(len, self.config.d),
        });
        self.next_free = self.config.n;
        self.trace.backyard_start = Some(start);
        self.trace.backyard_len = len;
        self.mode = Mode::Final;
        self.record_transition(TransitionKind::Final);
    }

    fn place_in_backyard(&mut self, x: &[f64]) -> Result<Option<usize>> {
        let by = self.backyard.as_mut().expect("final mode has a backyard");
        if by.placer.is_full() {
            return Ok(None);
        }
        self.domain.rescale_backyard(x, &mut self.scratch);
        let cell = by.start + by.placer.place(&self.scratch)?;
        self.array.write(cell, x)?;
        self.trace.backyard_placements += 1;
        Ok(Some(cell))
    }

    /// Failure placement: the lowest-indexed empty cell of the whole array.
    fn place_anywhere(&mut self, x: &[f64]) -> Result<usize> {
        let cell = self
            .array
            .first_empty_from(self.low_empty)
            .ok_or(Error::ArrayFull)?;
        self.low_empty = cell + 1;
        self.array.write(cell, x)?;
        self.trace.failure_placements += 1;
        // Keep the owning strategy's bookkeeping in sync.
        if let Some(p) = self
            .phases
            .iter()
            .rposition(|ph| ph.start <= cell && cell < ph.start + ph.len)
        {
            let buckets = &mut self.phases[p].buckets;
            // Empty buckets share their start with the next one, so the last
            // bucket starting at or before `cell` is the one holding it.
            let b = buckets.partition_point(|b| b.start <= cell) - 1;
            let bucket = &mut buckets[b];
            bucket.placer.claim(cell - bucket.start);
            self.note_phase_fill(p);
        } else if let Some(by) = self.backyard.as_mut() {
            by.placer.claim(cell - by.start);
        }
        Ok(cell)
    }

    /// Cell ownership so far.
    pub fn layout(&self) -> Layout {
        let mut regions = Vec::new();
        for ph in &self.phases {
            for (j, b) in ph.buckets.iter().enumerate() {
                let len = b.placer.capacity();
                if len > 0 {
                    regions.push(Region {
                        start: b.start,
                        len,
                        kind: RegionKind::Bucket {
                            phase: ph.index,
                            index: j + 1,
                        },
                    });
                }
            }
        }
        if let Some(by) = &self.backyard {
            if by.placer.capacity() > 0 {
                regions.push(Region {
                    start: by.start,
                    len: by.placer.capacity(),
                    kind: RegionKind::Backyard,
                });
            }
        }
        Layout { regions }
    }

    pub fn finish(mut self) -> RunOutput {
        self.trace.compute_fill_before_overflow();
        let layout = self.layout();
        RunOutput {
            array: self.array,
            trace: self.trace,
            layout,
        }
    }
}

/// Result of a complete run.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub array: PlacementArray,
    pub trace: RunTrace,
    pub layout: Layout,
}

fn check_input(config: &AlgorithmConfig, input: &PointSet) -> Result<()> {
    if input.len() != config.n {
        return Err(Error::InvalidConfig(format!(
            "input has {} points, config says n = {}",
            input.len(),
            config.n
        )));
    }
    if input.dim() != config.d {
        return Err(Error::InvalidConfig(format!(
            "input dimension {} differs from configured {}",
            input.dim(),
            config.d
        )));
    }
    input.validate_unit_cube()
}

/// Feeds `input` through the engine in arrival order.
pub fn run(
    config: &AlgorithmConfig,
    input: &PointSet,
    strategy: &dyn InteriorStrategy,
    domain: &dyn DomainAdapter,
) -> Result<RunOutput> {
    let mut engine = Engine::new(config.clone(), domain, strategy)?;
    check_input(config, input)?;
    for x in input.iter() {
        engine.place(x)?;
    }
    Ok(engine.finish())
}

/// Places every point in the next cell: the whole array is one bucket.
pub fn run_arrival_order(config: &AlgorithmConfig, input: &PointSet) -> Result<RunOutput> {
    config.validate()?;
    check_input(config, input)?;
    let ell = compute_ell(config.n, config.log_exponent)?;
    let n = config.n;
    let mut placer = ArrivalOrder.open(n, config.d);
    let mut array = PlacementArray::new(n, config.d);
    for x in input.iter() {
        let cell = placer.place(x)?;
        array.write(cell, x)?;
    }
    let trace = RunTrace {
        n,
        d: config.d,
        ell,
        log_exponent: config.log_exponent,
        backyard_constant: config.backyard_constant,
        strategy: StrategyKind::ArrivalOrder,
        arrival_order_fallback: true,
        phases: vec![PhaseRecord {
            index: 1,
            buckets: 1,
            start_cell: 0,
            len: n,
            bin_capacity: n as f64,
            placed_prev: 0,
            started_at: 0,
            overflow_at: None,
            filled_at: n.checked_sub(1),
            overflow_time: None,
            fill_time: Some(n),
            placed_at_overflow: None,
            clamped_bins: 0,
            deficit: 0,
        }],
        transitions: Vec::new(),
        backyard_start: None,
        backyard_len: 0,
        backyard_placements: 0,
        failed: false,
        failed_at: None,
        failure_placements: 0,
        fill_before_overflow: Vec::new(),
    };
    let layout = Layout {
        regions: vec![Region {
            start: 0,
            len: n,
            kind: RegionKind::Bucket { phase: 1, index: 1 },
        }],
    };
    Ok(RunOutput {
        array,
        trace,
        layout,
    })
}

/// Whether the configuration uses the arrival-order mode (`d ≥ 2` and `d ≥ ℓ`).
pub fn uses_arrival_order(config: &AlgorithmConfig) -> Result<bool> {
    let ell = compute_ell(config.n, config.log_exponent)?;
    Ok(config.d >= 2 && config.d >= ell as usize)
}

/// Runs with the default pairing for the configuration: interval keys with
/// [`AdvSort`] for `d = 1`, serpentine blocks with [`GridTsp`] for
/// `2 ≤ d < ℓ`, and arrival order for `d ≥ ℓ`.
pub fn run_auto(config: &AlgorithmConfig, input: &PointSet) -> Result<RunOutput> {
    config.validate()?;
    let ell = compute_ell(config.n, config.log_exponent)?;
    if config.d == 1 {
        let domain = IntervalDomain::new(&config.distribution, ell)?;
        run(config, input, &AdvSort, &domain)
    } else if uses_arrival_order(config)? {
        run_arrival_order(config, input)
    } else {
        let domain = BlockDomain::new(config.d, ell);
        run(config, input, &GridTsp, &domain)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::DistributionSpec;

    fn uniform_domain(n: usize) -> IntervalDomain {
        IntervalDomain::new(&DistributionSpec::Uniform, compute_ell(n, 2.0).unwrap()).unwrap()
    }

    #[test]
    fn phase1_capacities() {
        for (n, expected) in [
            (1024, vec![128; 4]),
            (1000, vec![125; 4]),
            (1026, vec![129, 128, 128, 128]),
        ] {
            let domain = uniform_domain(n);
            let e = Engine::new(AlgorithmConfig::new(n, 1), &domain, &AdvSort).unwrap();
            assert_eq!(e.ell(), 2);
            assert_eq!(e.phases()[0].bucket_capacities(), expected);
            assert_eq!(e.phases()[0].len(), n / 2);
        }
    }

    #[test]
    fn too_small_instance_fails_before_placement() {
        let domain = uniform_domain(1024);
        let input = PointSet::from_values(&[0.5; 7]);
        let err = run(&AlgorithmConfig::new(7, 1), &input, &AdvSort, &domain).unwrap_err();
        assert!(matches!(err, Error::InstanceTooSmall { n: 7, .. }));
    }

    #[test]
    fn nominal_and_overflow_paths() {
        let n = 1024;
        let domain = uniform_domain(n);
        let cfg = AlgorithmConfig::new(n, 1).with_backyard_constant(0.5);
        let mut e = Engine::new(cfg, &domain, &AdvSort).unwrap();
        let r = e.place(&[0.1]).unwrap();
        assert!(r.cell < 128);
        assert_eq!(r.phase, Some(1));
        assert_eq!(r.transitions, 0);
        for _ in 1..128 {
            e.place(&[0.1]).unwrap();
        }
        let r = e.place(&[0.1]).unwrap();
        assert_eq!(r.transitions, 1);
        assert_eq!(r.phase, Some(2));
        assert_eq!(e.phases().len(), 2);
        // The phase-2 bucket for key 1 sits inside A_2.
        assert!(r.cell >= 512 && r.cell < 768);
        assert_eq!(e.trace().phases[0].overflow_time, Some(128));
        assert_eq!(e.trace().phases[0].placed_at_overflow, Some(128));
    }

    #[test]
    fn identical_inputs_cascade_to_failure() {
        let n = 1024;
        let domain = uniform_domain(n);
        let input = PointSet::from_values(&vec![0.4; n]);
        let out = run(&AlgorithmConfig::new(n, 1), &input, &AdvSort, &domain).unwrap();
        assert!(out.trace.failed);
        assert_eq!(out.trace.k(), 1);
        assert_eq!(out.trace.backyard_len, 512);
        assert_eq!(out.trace.backyard_placements, 512);
        assert_eq!(out.trace.failure_placements, 1024 - 128 - 512);
        assert!(out.array.is_full());
        let kinds: Vec<_> = out.trace.transitions.iter().map(|t| t.kind).collect();
        assert_eq!(kinds, vec![TransitionKind::Final, TransitionKind::Failed]);
    }

    #[test]
    fn identical_inputs_with_many_phases() {
        let n = 1 << 12;
        let domain = uniform_domain(n);
        let input = PointSet::from_values(&vec![0.4; n]);
        let cfg = AlgorithmConfig::new(n, 1).with_backyard_constant(0.2);
        let out = run(&cfg, &input, &AdvSort, &domain).unwrap();
        assert!(out.trace.k() >= 2);
        assert!(out.trace.failed);
        assert!(!out.trace.filled_sequentially());
        assert!(out.array.is_full());
    }

    #[test]
    fn final_mode_is_entered_once() {
        let n = 1 << 12;
        let domain = uniform_domain(n);
        let mut rng = crate::rng::PortableRng::new(5);
        let input = crate::rng::sample_points(&mut rng, n, 1, &DistributionSpec::Uniform);
        let out = run(&AlgorithmConfig::new(n, 1), &input, &AdvSort, &domain).unwrap();
        let finals = out
            .trace
            .transitions
            .iter()
            .filter(|t| t.kind == TransitionKind::Final)
            .count();
        assert_eq!(finals, 1);
        assert_eq!(out.layout.allocated(), n);
    }

    #[test]
    fn array_full_is_reported() {
        let n = 1024;
        let domain = uniform_domain(n);
        let mut e = Engine::new(AlgorithmConfig::new(n, 1), &domain, &AdvSort).unwrap();
        for i in 0..n {
            e.place(&[(i as f64 + 0.5) / n as f64]).unwrap();
        }
        assert_eq!(e.place(&[0.5]).unwrap_err(), Error::ArrayFull);
    }

    #[test]
    fn designated_bucket_examples() {
        let domain = IntervalDomain::new(&DistributionSpec::Uniform, 2).unwrap();
        assert_eq!(designated_bucket(1, &[0.3], &domain), 2);
        assert_eq!(designated_bucket(1, &[0.25], &domain), 1);
        assert_eq!(designated_bucket(1, &[0.0], &domain), 1);
        assert_eq!(designated_bucket(2, &[0.3], &domain), 1);
    }

    #[test]
    fn layout_lookup() {
        let layout = Layout {
            regions: vec![
                Region {
                    start: 0,
                    len: 3,
                    kind: RegionKind::Bucket { phase: 1, index: 1 },
                },
                Region {
                    start: 3,
                    len: 2,
                    kind: RegionKind::Backyard,
                },
            ],
        };
        assert_eq!(layout.region_of(2).unwrap().start, 0);
        assert_eq!(layout.region_of(4).unwrap().kind, RegionKind::Backyard);
        assert!(layout.region_of(5).is_none());
    }
}
