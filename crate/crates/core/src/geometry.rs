//! Block partitions of `[0,1]^d` and the serpentine block order.
//!
//! A partition is produced by `ℓ` midpoint splits applied round-robin over
//! the dimensions (first split on dimension 1, then 2, ..., wrapping after
//! `d`). Grid coordinates are 1-based, matching the bucket numbering of the
//! one-dimensional engine, and block boundaries are half-open on the left:
//! block `j` of a dimension with `n` slabs covers `((j-1)/n, j/n]`, with the
//! coordinate 0 belonging to block 1.

/// Axis-aligned box `[lo, hi]` in `[0,1]^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockBox {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl BlockBox {
    pub fn unit(d: usize) -> Self {
        Self {
            lo: vec![0.0; d],
            hi: vec![1.0; d],
        }
    }

    /// Both halves when cut by the hyperplane perpendicular to `dim`
    /// (0-based) at the midpoint.
    pub fn halves(&self, dim: usize) -> (BlockBox, BlockBox) {
        let mid = 0.5 * (self.lo[dim] + self.hi[dim]);
        let mut low = self.clone();
        let mut high = self.clone();
        low.hi[dim] = mid;
        high.lo[dim] = mid;
        (low, high)
    }

    pub fn union(&self, other: &BlockBox) -> BlockBox {
        BlockBox {
            lo: self
                .lo
                .iter()
                .zip(&other.lo)
                .map(|(a, b)| a.min(*b))
                .collect(),
            hi: self
                .hi
                .iter()
                .zip(&other.hi)
                .map(|(a, b)| a.max(*b))
                .collect(),
        }
    }

    pub fn volume(&self) -> f64 {
        self.lo.iter().zip(&self.hi).map(|(l, h)| h - l).product()
    }

    pub fn diameter(&self) -> f64 {
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(l, h)| (h - l) * (h - l))
            .sum::<f64>()
            .sqrt()
    }

    /// Maps `x` affinely into `[0,1]^d` relative to this box.
    pub fn rescale(&self, x: &[f64], out: &mut [f64]) {
        for (i, o) in out.iter_mut().enumerate() {
            let w = self.hi[i] - self.lo[i];
            *o = if w > 0.0 {
                ((x[i] - self.lo[i]) / w).clamp(0.0, 1.0)
            } else {
                0.0
            };
        }
    }
}

/// Literal block-set split: every block in `blocks` is replaced by its two
/// halves along `dim` (0-based).
pub fn split_blocks(blocks: &[BlockBox], dim: usize) -> Vec<BlockBox> {
    let mut out = Vec::with_capacity(blocks.len() * 2);
    for b in blocks {
        let (l, h) = b.halves(dim);
        out.push(l);
        out.push(h);
    }
    out
}

/// The grid of blocks after round-robin splitting, with its serpentine order.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockPartition {
    d: usize,
    splits_per_dim: Vec<usize>,
}

impl BlockPartition {
    /// The unsplit cube.
    pub fn unit(d: usize) -> Self {
        assert!(d >= 1);
        Self {
            d,
            splits_per_dim: vec![1; d],
        }
    }

    /// `ell` round-robin splits of `[0,1]^d`.
    pub fn round_robin(d: usize, ell: u32) -> Self {
        let mut p = Self::unit(d);
        for r in 0..ell as usize {
            p = p.split(r % d);
        }
        p
    }

    /// Bisects every block along `dim` (0-based).
    pub fn split(&self, dim: usize) -> Self {
        assert!(dim < self.d, "dimension {dim} out of range");
        let mut splits = self.splits_per_dim.clone();
        splits[dim] *= 2;
        Self {
            d: self.d,
            splits_per_dim: splits,
        }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    /// Slab counts `n_1, ..., n_d`.
    pub fn splits_per_dim(&self) -> &[usize] {
        &self.splits_per_dim
    }

    pub fn block_count(&self) -> usize {
        self.splits_per_dim.iter().product()
    }

    /// Grid coordinate of the block containing `x`.
    pub fn block_of(&self, x: &[f64]) -> Vec<usize> {
        let mut v = vec![0; self.d];
        self.block_of_into(x, &mut v);
        v
    }

    pub fn block_of_into(&self, x: &[f64], v: &mut [usize]) {
        for ((vi, &xi), &ni) in v.iter_mut().zip(x).zip(&self.splits_per_dim) {
            *vi = slab_of(xi, ni);
        }
    }

    /// Serpentine position (1-based) of the block containing `x`.
    pub fn order_index_of(&self, x: &[f64]) -> usize {
        let mut odd = false;
        let mut index = 0usize;
        for i in (0..self.d).rev() {
            let ni = self.splits_per_dim[i];
            let vi = slab_of(x[i], ni);
            let digit = if odd { ni - vi } else { vi - 1 };
            index = index * ni + digit;
            odd = (digit + ni * odd as usize) % 2 == 1;
        }
        index + 1
    }

    /// Box of the block at grid coordinate `v`.
    pub fn block_box(&self, v: &[usize]) -> BlockBox {
        let lo = v
            .iter()
            .zip(&self.splits_per_dim)
            .map(|(&vi, &ni)| (vi - 1) as f64 / ni as f64)
            .collect();
        let hi = v
            .iter()
            .zip(&self.splits_per_dim)
            .map(|(&vi, &ni)| vi as f64 / ni as f64)
            .collect();
        BlockBox { lo, hi }
    }

    /// Blocks in serpentine order.
    pub fn order(&self) -> Vec<Vec<usize>> {
        serpentine_order(&self.splits_per_dim)
    }

    /// Boxes of the merged blocks used in phase `phase` (1-based): group `j`
    /// is the union of serpentine blocks `(j-1)·2^(phase-1)+1 ..= j·2^(phase-1)`.
    pub fn merged_boxes(&self, phase: u32) -> Vec<BlockBox> {
        let mut boxes: Vec<BlockBox> = self.order().iter().map(|v| self.block_box(v)).collect();
        for _ in 1..phase {
            if boxes.len() == 1 {
                break;
            }
            boxes = boxes
                .chunks(2)
                .map(|c| {
                    if c.len() == 2 {
                        c[0].union(&c[1])
                    } else {
                        c[0].clone()
                    }
                })
                .collect();
        }
        boxes
    }
}

/// 1-based slab index of coordinate `x` among `n` equal slabs of `[0,1]`.
#[inline]
pub fn slab_of(x: f64, n: usize) -> usize {
    let j = (x * n as f64).ceil();
    if j < 1.0 {
        1
    } else {
        (j as usize).min(n)
    }
}

/// The serpentine traversal of a grid with `splits[i]` slabs in dimension
/// `i`: start at the all-ones corner, always try to move along the lowest
/// dimension, and when that move would leave the grid flip its direction and
/// try the next dimension. Stops once every block has been visited, which
/// for even `n_d` is at `(1, ..., 1, n_d)`.
pub fn serpentine_order(splits: &[usize]) -> Vec<Vec<usize>> {
    let d = splits.len();
    assert!(d >= 1 && splits.iter().all(|&n| n >= 1));
    let total: usize = splits.iter().product();
    let mut v = vec![1usize; d];
    let mut dir = vec![1isize; d];
    let mut out = Vec::with_capacity(total);
    out.push(v.clone());
    while out.len() < total {
        let mut j = 0;
        loop {
            let next = v[j] as isize + dir[j];
            if next < 1 || next > splits[j] as isize {
                dir[j] = -dir[j];
                j += 1;
                if j == d {
                    return out;
                }
            } else {
                break;
            }
        }
        v[j] = (v[j] as isize + dir[j]) as usize;
        out.push(v.clone());
    }
    out
}

/// 1-based position of grid coordinate `v` in [`serpentine_order`].
///
/// Dimension `i` is swept forward when the number of sweeps completed in it
/// so far is even; that count is the mixed-radix value of the digits above
/// it, so only its parity is carried down from the top dimension.
pub fn order_index(v: &[usize], splits: &[usize]) -> usize {
    let mut odd = false;
    let mut index = 0usize;
    for i in (0..v.len()).rev() {
        let ni = splits[i];
        let digit = if odd { ni - v[i] } else { v[i] - 1 };
        index = index * ni + digit;
        odd = (digit + ni * odd as usize) % 2 == 1;
    }
    index + 1
}

/// Bucket key of fine (phase-1) key `order_idx` in phase `phase`:
/// `ceil(order_idx / 2^(phase-1))`.
#[inline]
pub fn merged_key(order_idx: usize, phase: u32) -> usize {
    let g = 1usize << (phase - 1);
    order_idx.div_ceil(g)
}
