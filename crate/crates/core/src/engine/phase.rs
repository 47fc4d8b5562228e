//! Capacity planning for a freshly spawned phase.

use crate::error::{Error, Result};

/// Splits `total` into `k` parts of `⌊total/k⌋` or `⌊total/k⌋ + 1`, the
/// larger parts going to the lowest indices.
pub fn split_evenly(total: usize, k: usize) -> Vec<usize> {
    assert!(k > 0);
    let (base, rem) = (total / k, total % k);
    (0..k).map(|j| base + usize::from(j < rem)).collect()
}

/// Bucket sizes of the next subarray and the bin capacities behind them.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct PhasePlan {
    /// Real-valued per-bin capacity `C = (A_prev + A_next - N_prev) / K_next`.
    pub bin_capacity: f64,
    /// Integer bin capacities before any clamping (`⌊C⌋` or `⌊C⌋ + 1`).
    pub bin_capacities: Vec<usize>,
    /// Bucket sizes in the next subarray; they sum to its length.
    pub bucket_sizes: Vec<usize>,
    /// Bins whose leftover exceeded their allocation.
    pub clamped_bins: usize,
    /// Cells taken from other bins to cover the clamped ones.
    pub deficit: usize,
}

impl PhasePlan {
    /// Leftover plus new bucket size for each bin.
    pub fn effective_capacities(&self, leftovers: &[usize]) -> Vec<usize> {
        self.bucket_sizes
            .iter()
            .enumerate()
            .map(|(j, s)| s + leftovers[2 * j] + leftovers[2 * j + 1])
            .collect()
    }
}

/// Plans the subarray that absorbs overflow from the previous one.
///
/// `leftovers[b]` is the number of empty cells in bucket `b` of the previous
/// subarray at its first overflow, when `placed_prev` of its `prev_len` cells
/// were filled. Bin `j` of the new instance is the pair of previous buckets
/// `2j, 2j+1` plus new bucket `j`. Bins get equal capacity and each new
/// bucket is its bin's capacity minus the pair's leftovers. A bucket that
/// would come out negative is set to zero and the shortfall is taken from the
/// lowest-indexed buckets that still have room.
pub fn plan_next_phase(
    prev_len: usize,
    next_len: usize,
    placed_prev: usize,
    leftovers: &[usize],
) -> Result<PhasePlan> {
    if leftovers.len() < 2 || !leftovers.len().is_multiple_of(2) {
        return Err(Error::InvalidConfig(format!(
            "previous phase must have an even bucket count, got {}",
            leftovers.len()
        )));
    }
    let empty: usize = leftovers.iter().sum();
    if placed_prev > prev_len || empty != prev_len - placed_prev {
        return Err(Error::InvalidConfig(format!(
            "leftovers sum to {empty} but {prev_len} - {placed_prev} cells are empty"
        )));
    }
    let bins = leftovers.len() / 2;
    let total = prev_len + next_len - placed_prev;
    let bin_capacities = split_evenly(total, bins);

    let mut deficit = 0usize;
    let mut clamped_bins = 0usize;
    let mut bucket_sizes: Vec<usize> = bin_capacities
        .iter()
        .enumerate()
        .map(|(j, &cap)| {
            let left = leftovers[2 * j] + leftovers[2 * j + 1];
            if left > cap {
                deficit += left - cap;
                clamped_bins += 1;
                0
            } else {
                cap - left
            }
        })
        .collect();
    let mut owed = deficit;
    for s in bucket_sizes.iter_mut() {
        if owed == 0 {
            break;
        }
        let take = (*s).min(owed);
        *s -= take;
        owed -= take;
    }
    debug_assert_eq!(owed, 0);
    debug_assert_eq!(bucket_sizes.iter().sum::<usize>(), next_len);

    Ok(PhasePlan {
        bin_capacity: total as f64 / bins as f64,
        bin_capacities,
        bucket_sizes,
        clamped_bins,
        deficit,
    })
}
