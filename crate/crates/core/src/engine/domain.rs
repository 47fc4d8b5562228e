//! Mapping from points to bucket keys and bucket-local coordinates.

use crate::error::Result;
use crate::geometry::{BlockBox, BlockPartition};
use crate::model::{quantile_boundaries, DistributionSpec};

/// Supplies the `2^ℓ` equal-probability phase-1 keys and the region that each
/// (phase, key) pair covers. Keys of later phases are obtained by merging
/// consecutive phase-1 keys, see [`crate::geometry::merged_key`].
pub trait DomainAdapter: Send + Sync {
    fn dim(&self) -> usize;
    /// Number of phase-1 keys (`2^ℓ`).
    fn fine_count(&self) -> usize;
    /// 1-based phase-1 key of `x`.
    fn fine_key(&self, x: &[f64]) -> usize;
    /// Writes `x` expressed relative to the region of bucket `key` in phase
    /// `phase` into `out`, each coordinate in `[0, 1]`.
    fn rescale(&self, x: &[f64], phase: u32, key: usize, out: &mut [f64]);
    /// Coordinates used for backyard placement.
    fn rescale_backyard(&self, x: &[f64], out: &mut [f64]) {
        out.copy_from_slice(x);
    }
}

/// One-dimensional keys: consecutive intervals of equal probability mass.
///
/// For a non-uniform distribution, bucket-local coordinates are taken in
/// probability space (`F(x)` rescaled to the bucket's mass range), so the
/// interior strategy sees uniform points in every bucket and in the backyard.
#[derive(Debug, Clone)]
pub struct IntervalDomain {
    boundaries: Vec<f64>,
    dist: DistributionSpec,
}

impl IntervalDomain {
    pub fn new(dist: &DistributionSpec, ell: u32) -> Result<Self> {
        Ok(Self {
            boundaries: quantile_boundaries(dist, 1usize << ell)?,
            dist: dist.clone(),
        })
    }

    pub fn boundaries(&self) -> &[f64] {
        &self.boundaries
    }
}

impl DomainAdapter for IntervalDomain {
    fn dim(&self) -> usize {
        1
    }

    fn fine_count(&self) -> usize {
        self.boundaries.len() - 1
    }

    fn fine_key(&self, x: &[f64]) -> usize {
        // First j >= 1 with x <= b_j, so intervals are (b_{j-1}, b_j] and 0
        // falls in the first one.
        let k = self.fine_count();
        (self.boundaries[1..].partition_point(|&b| b < x[0]) + 1).min(k)
    }

    fn rescale(&self, x: &[f64], phase: u32, key: usize, out: &mut [f64]) {
        let g = 1usize << (phase - 1);
        let (a, b) = ((key - 1) * g, (key * g).min(self.fine_count()));
        let (lo, hi, v) = match self.dist {
            DistributionSpec::Uniform => (self.boundaries[a], self.boundaries[b], x[0]),
            DistributionSpec::InverseCdf(_) => {
                let k = self.fine_count() as f64;
                (a as f64 / k, b as f64 / k, self.dist.cdf(x[0]))
            }
        };
        out[0] = if hi > lo {
            ((v - lo) / (hi - lo)).clamp(0.0, 1.0)
        } else {
            0.0
        };
    }

    fn rescale_backyard(&self, x: &[f64], out: &mut [f64]) {
        out[0] = self.dist.cdf(x[0]);
    }
}

/// `d`-dimensional keys: serpentine positions of the round-robin block grid.
#[derive(Debug, Clone)]
pub struct BlockDomain {
    partition: BlockPartition,
    /// `boxes[p]` holds the merged-block boxes of phase `p + 1`.
    boxes: Vec<Vec<BlockBox>>,
}

impl BlockDomain {
    pub fn new(d: usize, ell: u32) -> Self {
        let partition = BlockPartition::round_robin(d, ell);
        let mut boxes = vec![partition.merged_boxes(1)];
        for _ in 0..ell {
            let prev = boxes.last().expect("non-empty");
            let next = prev
                .chunks(2)
                .map(|c| {
                    if c.len() == 2 {
                        c[0].union(&c[1])
                    } else {
                        c[0].clone()
                    }
                })
                .collect();
            boxes.push(next);
        }
        Self { partition, boxes }
    }

    pub fn partition(&self) -> &BlockPartition {
        &self.partition
    }

    /// Region of bucket `key` in phase `phase`.
    pub fn region(&self, phase: u32, key: usize) -> &BlockBox {
        let level = (phase as usize - 1).min(self.boxes.len() - 1);
        &self.boxes[level][key - 1]
    }
}

impl DomainAdapter for BlockDomain {
    fn dim(&self) -> usize {
        self.partition.dim()
    }

    fn fine_count(&self) -> usize {
        self.partition.block_count()
    }

    fn fine_key(&self, x: &[f64]) -> usize {
        self.partition.order_index_of(x)
    }

    fn rescale(&self, x: &[f64], phase: u32, key: usize, out: &mut [f64]) {
        self.region(phase, key).rescale(x, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Quantile;

    #[test]
    fn interval_keys_are_half_open() {
        let d = IntervalDomain::new(&DistributionSpec::Uniform, 2).unwrap();
        assert_eq!(d.fine_key(&[0.3]), 2);
        assert_eq!(d.fine_key(&[0.25]), 1);
        assert_eq!(d.fine_key(&[0.0]), 1);
        assert_eq!(d.fine_key(&[1.0]), 4);
        assert_eq!(d.fine_key(&[0.2500001]), 2);
    }

    #[test]
    fn interval_rescale_follows_merging() {
        let d = IntervalDomain::new(&DistributionSpec::Uniform, 2).unwrap();
        let mut out = [0.0];
        d.rescale(&[0.3], 1, 2, &mut out);
        assert!((out[0] - 0.2).abs() < 1e-12);
        d.rescale(&[0.3], 2, 1, &mut out);
        assert!((out[0] - 0.6).abs() < 1e-12);
        d.rescale(&[0.3], 3, 1, &mut out);
        assert!((out[0] - 0.3).abs() < 1e-12);
    }

    #[test]
    fn quantile_keys_have_equal_mass() {
        let d = IntervalDomain::new(&DistributionSpec::InverseCdf(Quantile::sqrt()), 1).unwrap();
        assert_eq!(d.fine_key(&[0.7]), 1);
        assert_eq!(d.fine_key(&[0.71]), 2);
    }

    #[test]
    fn skewed_distribution_rescales_by_mass() {
        let d = IntervalDomain::new(&DistributionSpec::InverseCdf(Quantile::sqrt()), 1).unwrap();
        let mut out = [0.0];
        // F(0.5) = 0.25 sits halfway through the first half of the mass.
        d.rescale(&[0.5], 1, 1, &mut out);
        assert!((out[0] - 0.5).abs() < 1e-9);
        d.rescale_backyard(&[0.5], &mut out);
        assert!((out[0] - 0.25).abs() < 1e-9);
    }

    #[test]
    fn block_regions_cover_merged_blocks() {
        let d = BlockDomain::new(2, 3);
        assert_eq!(d.fine_count(), 8);
        assert_eq!(d.fine_key(&[0.1, 0.1]), 1);
        // Phase 3 merges four blocks: the bottom row of the 4x2 grid.
        let r = d.region(3, 1);
        assert_eq!(r.lo, vec![0.0, 0.0]);
        assert_eq!(r.hi, vec![1.0, 0.5]);
        assert_eq!(d.region(4, 1), &BlockBox::unit(2));
    }
}
