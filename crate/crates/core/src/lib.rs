//! Simulation, coding and capacity analysis for the shuffling-sampling
//! channel that models DNA data storage.
//!
//! - [`channel`]: draw counts, BSC noise and shuffling.
//! - [`capacity`]: closed-form capacities and bounds, Blahut–Arimoto,
//!   counting of frequency vectors.
//! - [`codec`]: index-based concatenated code (inner BSC code, outer
//!   Reed–Solomon erasure code) and the short-molecule repetition scheme.
//! - [`montecarlo`]: seeded parallel experiments and sweeps.
//!
//! The analytic formulas are generic over the scalar type. The aliases below
//! fix it to `f64`, which is what the simulator and the CLI use.

// `!(x > 0.0)` is used on purpose so that NaN inputs are rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bits;
pub mod capacity;
pub mod channel;
pub mod codec;
pub mod montecarlo;
pub mod rng;
pub mod scalar;

pub use bits::BitString;
pub use scalar::{Rate, Real};

/// Exact rational scalar for the rate formulas that admit one.
pub type Rational = num_rational::Ratio<i64>;

pub type CapacityResult = capacity::CapacityResult<f64>;
pub type TradeoffPoint = capacity::TradeoffPoint<f64>;
pub type TransitionMatrix = capacity::TransitionMatrix<f64>;
pub type BaOutcome = capacity::BaOutcome<f64>;
