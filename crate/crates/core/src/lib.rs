//! Phase-based stochastic online sorting and its extension to online TSP in
//! `[0,1]^d`.
//!
//! Points arrive one at a time and must be written immediately into an
//! array of `n` cells. The cost of the final array is the sum of distances
//! between consecutive cells. [`engine`] holds the phase machine,
//! [`interior`] the per-bucket placement strategies, [`geometry`] the block
//! partition, [`oracles`] the offline comparison costs and [`harness`] the
//! Monte Carlo driver.

pub mod engine;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod interior;
pub mod model;
pub mod oracles;
pub mod rng;

pub use engine::{run, run_arrival_order, run_auto, Engine, RunOutput, RunTrace};
pub use error::{Error, Result};
pub use model::{AlgorithmConfig, DistributionSpec, PlacementArray, PointSet, Quantile};
