//! Cell choice inside one bucket.
//!
//! The engine decides which bucket a point goes to; an [`InteriorStrategy`]
//! decides which cell of that bucket it occupies. Points reach a strategy
//! already rescaled to the bucket's own region, so every coordinate is in
//! `[0, 1]` regardless of phase or block geometry.
//!
//! The two segment/class strategies implement the classic `O(√m)` scheme for
//! adversarial input: a bucket of `m` cells is cut into `⌈√m⌉` contiguous
//! segments, the value range into classes, and a point goes to the leftmost
//! non-full segment already owned by its class, or else claims the leftmost
//! unowned segment. Only when neither exists does it fall back to the
//! leftmost empty cell of the bucket. Segments fill left to right.

use crate::error::{Error, Result};
use crate::geometry::{slab_of, BlockPartition};

/// Per-bucket placement state.
pub trait BucketPlacer: Send {
    /// Picks an empty cell (offset within the bucket) for the rescaled point.
    fn place(&mut self, x: &[f64]) -> Result<usize>;
    /// Records that `offset` was filled without consulting the strategy.
    fn claim(&mut self, offset: usize);
    fn capacity(&self) -> usize;
    fn fill(&self) -> usize;
    fn is_full(&self) -> bool {
        self.fill() == self.capacity()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StrategyKind {
    AdvSort1d,
    GridTspDd,
    ArrivalOrder,
}

/// Factory for per-bucket placement state.
pub trait InteriorStrategy: Send + Sync {
    fn kind(&self) -> StrategyKind;
    fn open(&self, capacity: usize, dim: usize) -> Box<dyn BucketPlacer>;
}

/// Segment/class scheme with classes given by equal subintervals of `[0,1]`.
#[derive(Debug, Clone, Copy, Default)]
pub struct AdvSort;

/// Segment/class scheme with classes given by the serpentine sub-grid of the
/// bucket's block.
#[derive(Debug, Clone, Copy, Default)]
pub struct GridTsp;

/// Fills cells in arrival order.
#[derive(Debug, Clone, Copy, Default)]
pub struct ArrivalOrder;

impl InteriorStrategy for AdvSort {
    fn kind(&self) -> StrategyKind {
        StrategyKind::AdvSort1d
    }

    fn open(&self, capacity: usize, _dim: usize) -> Box<dyn BucketPlacer> {
        let segments = ceil_sqrt(capacity);
        Box::new(SegmentPlacer::new(
            capacity,
            IntervalClasses {
                count: segments.max(1),
            },
        ))
    }
}

impl InteriorStrategy for GridTsp {
    fn kind(&self) -> StrategyKind {
        StrategyKind::GridTspDd
    }

    fn open(&self, capacity: usize, dim: usize) -> Box<dyn BucketPlacer> {
        let segments = ceil_sqrt(capacity).max(1);
        let splits = usize::BITS - 1 - segments.leading_zeros();
        let grid = BlockPartition::round_robin(dim, splits);
        Box::new(SegmentPlacer::new(capacity, GridClasses { grid }))
    }
}

impl InteriorStrategy for ArrivalOrder {
    fn kind(&self) -> StrategyKind {
        StrategyKind::ArrivalOrder
    }

    fn open(&self, capacity: usize, _dim: usize) -> Box<dyn BucketPlacer> {
        Box::new(ArrivalPlacer {
            occupied: vec![false; capacity],
            next: 0,
            fill: 0,
        })
    }
}

pub fn strategy_for(kind: StrategyKind) -> Box<dyn InteriorStrategy> {
    match kind {
        StrategyKind::AdvSort1d => Box::new(AdvSort),
        StrategyKind::GridTspDd => Box::new(GridTsp),
        StrategyKind::ArrivalOrder => Box::new(ArrivalOrder),
    }
}

/// `⌈√m⌉`.
pub fn ceil_sqrt(m: usize) -> usize {
    let mut r = (m as f64).sqrt() as usize;
    while r * r > m {
        r -= 1;
    }
    if r * r < m {
        r += 1;
    }
    r
}

pub trait Classifier: Send {
    fn classes(&self) -> usize;
    /// 0-based class of a rescaled point.
    fn class_of(&self, x: &[f64]) -> usize;
}

pub struct IntervalClasses {
    count: usize,
}

impl Classifier for IntervalClasses {
    fn classes(&self) -> usize {
        self.count
    }

    fn class_of(&self, x: &[f64]) -> usize {
        slab_of(x[0], self.count) - 1
    }
}

pub struct GridClasses {
    grid: BlockPartition,
}

impl Classifier for GridClasses {
    fn classes(&self) -> usize {
        self.grid.block_count()
    }

    fn class_of(&self, x: &[f64]) -> usize {
        self.grid.order_index_of(x) - 1
    }
}

const UNOWNED: u32 = u32::MAX;

pub struct SegmentPlacer<C> {
    occupied: Vec<bool>,
    fill: usize,
    /// `seg_start[s]..seg_start[s + 1]` are the cells of segment `s`.
    seg_start: Vec<usize>,
    seg_owner: Vec<u32>,
    /// Next candidate cell of each segment.
    seg_next: Vec<usize>,
    next_unowned: usize,
    class_segments: Vec<Vec<u32>>,
    class_cursor: Vec<usize>,
    low_empty: usize,
    classifier: C,
}

impl<C: Classifier> SegmentPlacer<C> {
    pub fn new(capacity: usize, classifier: C) -> Self {
        let segments = ceil_sqrt(capacity);
        let mut seg_start = Vec::with_capacity(segments + 1);
        let (base, extra) = capacity
            .checked_div(segments)
            .map_or((0, 0), |b| (b, capacity % segments));
        let mut at = 0;
        for s in 0..segments {
            seg_start.push(at);
            at += base + usize::from(s < extra);
        }
        seg_start.push(at);
        debug_assert_eq!(at, capacity);
        let classes = classifier.classes();
        Self {
            occupied: vec![false; capacity],
            fill: 0,
            seg_next: seg_start[..segments].to_vec(),
            seg_start,
            seg_owner: vec![UNOWNED; segments],
            next_unowned: 0,
            class_segments: vec![Vec::new(); classes],
            class_cursor: vec![0; classes],
            low_empty: 0,
            classifier,
        }
    }

    pub fn segments(&self) -> usize {
        self.seg_owner.len()
    }

    fn next_in_segment(&mut self, s: usize) -> Option<usize> {
        let end = self.seg_start[s + 1];
        let mut c = self.seg_next[s];
        while c < end && self.occupied[c] {
            c += 1;
        }
        self.seg_next[s] = c;
        (c < end).then_some(c)
    }

    fn take(&mut self, offset: usize) -> usize {
        debug_assert!(!self.occupied[offset]);
        self.occupied[offset] = true;
        self.fill += 1;
        offset
    }
}

impl<C: Classifier> BucketPlacer for SegmentPlacer<C> {
    fn place(&mut self, x: &[f64]) -> Result<usize> {
        if self.fill == self.occupied.len() {
            return Err(Error::BucketFull);
        }
        let class = self.classifier.class_of(x);
        while let Some(&s) = self.class_segments[class].get(self.class_cursor[class]) {
            if let Some(c) = self.next_in_segment(s as usize) {
                return Ok(self.take(c));
            }
            self.class_cursor[class] += 1;
        }
        while self.next_unowned < self.seg_owner.len() {
            let s = self.next_unowned;
            self.next_unowned += 1;
            if self.seg_owner[s] != UNOWNED {
                continue;
            }
            // A segment filled entirely by fallback placements stays unowned.
            if let Some(c) = self.next_in_segment(s) {
                self.seg_owner[s] = class as u32;
                self.class_segments[class].push(s as u32);
                return Ok(self.take(c));
            }
        }
        while self.occupied[self.low_empty] {
            self.low_empty += 1;
        }
        Ok(self.take(self.low_empty))
    }

    fn claim(&mut self, offset: usize) {
        if !self.occupied[offset] {
            self.take(offset);
        }
    }

    fn capacity(&self) -> usize {
        self.occupied.len()
    }

    fn fill(&self) -> usize {
        self.fill
    }
}

pub struct ArrivalPlacer {
    occupied: Vec<bool>,
    next: usize,
    fill: usize,
}

impl BucketPlacer for ArrivalPlacer {
    fn place(&mut self, _x: &[f64]) -> Result<usize> {
        while self.next < self.occupied.len() && self.occupied[self.next] {
            self.next += 1;
        }
        if self.next == self.occupied.len() {
            return Err(Error::BucketFull);
        }
        self.occupied[self.next] = true;
        self.fill += 1;
        Ok(self.next)
    }

    fn claim(&mut self, offset: usize) {
        if !self.occupied[offset] {
            self.occupied[offset] = true;
            self.fill += 1;
        }
    }

    fn capacity(&self) -> usize {
        self.occupied.len()
    }

    fn fill(&self) -> usize {
        self.fill
    }
}

/// Places `values` (already in `[0,1]`) into a fresh bucket of `values.len()`
/// cells and returns the resulting within-bucket order.
pub fn arrange(strategy: &dyn InteriorStrategy, points: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let dim = points.first().map_or(1, Vec::len);
    let mut placer = strategy.open(points.len(), dim);
    let mut cells: Vec<Option<Vec<f64>>> = vec![None; points.len()];
    for p in points {
        let c = placer.place(p)?;
        cells[c] = Some(p.clone());
    }
    Ok(cells
        .into_iter()
        .map(|c| c.expect("bucket completely filled"))
        .collect())
}
