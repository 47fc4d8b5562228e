use serde::{Deserialize, Serialize};

use crate::interior::StrategyKind;

/// Timeline of one subarray `A_i`.
///
/// Arrival indices are 0-based positions in the input sequence. Phase `i`
/// starts with the arrival that overflowed phase `i - 1` (phase 1 starts at
/// arrival 0).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseRecord {
    pub index: u32,
    /// Bucket count `K_i`.
    pub buckets: usize,
    pub start_cell: usize,
    /// Subarray length `A_i`.
    pub len: usize,
    /// Real-valued bin capacity `C_i`.
    pub bin_capacity: f64,
    /// Cells of `A_{i-1}` filled at its first overflow (`N_{i-1}`; 0 for phase 1).
    pub placed_prev: usize,
    pub started_at: usize,
    /// Arrival that found every designated bucket full.
    pub overflow_at: Option<usize>,
    /// Arrival that filled the last cell of `A_i`.
    pub filled_at: Option<usize>,
    /// Insertions during the phase before its first overflow (`T_i`).
    pub overflow_time: Option<usize>,
    /// Insertions from the phase start until `A_i` was full (`T_i'`).
    pub fill_time: Option<usize>,
    /// Cells of `A_i` filled at its first overflow (`N_i`).
    pub placed_at_overflow: Option<usize>,
    pub clamped_bins: usize,
    pub deficit: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "to")]
pub enum TransitionKind {
    Phase { index: u32 },
    Final,
    Failed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionRecord {
    pub arrival: usize,
    #[serde(flatten)]
    pub kind: TransitionKind,
}

/// Everything observable about one run besides the array contents.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunTrace {
    pub n: usize,
    pub d: usize,
    pub ell: u32,
    pub log_exponent: f64,
    pub backyard_constant: f64,
    pub strategy: StrategyKind,
    pub arrival_order_fallback: bool,
    pub phases: Vec<PhaseRecord>,
    pub transitions: Vec<TransitionRecord>,
    pub backyard_start: Option<usize>,
    pub backyard_len: usize,
    pub backyard_placements: usize,
    pub failed: bool,
    pub failed_at: Option<usize>,
    pub failure_placements: usize,
    /// For each boundary `j = 1..k-1`: whether `A_j` was full before the
    /// first overflow of `A_{j+1}`.
    pub fill_before_overflow: Vec<bool>,
}

impl RunTrace {
    /// Number of phases spawned (`k`).
    pub fn k(&self) -> usize {
        self.phases.len()
    }

    /// Whether every phase boundary filled in order.
    pub fn filled_sequentially(&self) -> bool {
        self.fill_before_overflow.iter().all(|&b| b)
    }

    pub(crate) fn compute_fill_before_overflow(&mut self) {
        self.fill_before_overflow = self
            .phases
            .windows(2)
            .map(|w| match (w[0].filled_at, w[1].overflow_at) {
                (Some(f), Some(o)) => f < o,
                (Some(_), None) => true,
                (None, _) => false,
            })
            .collect();
    }
}
