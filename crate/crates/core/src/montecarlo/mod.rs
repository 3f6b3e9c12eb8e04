//! Seeded, parallel experiments and parameter sweeps.
//!
//! Trial `i` of a batch draws all of its randomness from
//! [`derive_seed`](crate::rng::derive_seed)`(base_seed, i)`, so results do
//! not depend on how many worker threads ran the batch. Records come back in
//! trial order.

mod checks;
mod output;
mod run;
mod spec;
mod sweep;

pub use checks::{measure_undetected_swaps, verify_chernoff, verify_coupon_tail, BoundVerdict, UndetectedReport};
pub use output::{records_to_jsonl, write_csv, write_jsonl};
pub use run::{run, run_with_threads, ExperimentResult, Summary};
pub use spec::{ExperimentKind, ExperimentSpec, TrialRecord};
pub use sweep::{
    coverage_fraction, rate_vs_capacity_sweep, region_sweep, tradeoff_sweep, RateSweep, RegionRow, SweepAxis, SweepRow,
    TradeoffRow,
};

use crate::capacity::CapacityError;
use crate::channel::ChannelError;
use crate::codec::CodecError;

#[derive(Debug, thiserror::Error)]
pub enum MonteCarloError {
    #[error("invalid experiment: {0}")]
    Invalid(String),
    #[error(transparent)]
    Channel(#[from] ChannelError),
    #[error(transparent)]
    Codec(#[from] CodecError),
    #[error(transparent)]
    Capacity(#[from] CapacityError),
    #[error("thread pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
