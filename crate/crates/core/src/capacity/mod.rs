//! Closed-form capacities, bounds and the numerical solvers behind them.
//!
//! Everything here is a pure function. Formulas that only need field
//! operations are generic over [`Rate`](crate::scalar::Rate) and can be
//! evaluated exactly over rationals; the rest are generic over
//! [`Real`](crate::scalar::Real).

mod blahut;
mod bounds;
mod counting;
mod entropy;
mod formulas;

pub use blahut::{dmc_capacity_ba, sdmc_capacity, BaOutcome, TransitionMatrix, DEFAULT_BA_MAX_ITER, DEFAULT_BA_TOL};
pub use bounds::{chernoff_read_error_bound, coupon_tail_bound, hoeffding_seen_fraction_bound};
pub use counting::{counting_t, counting_t_log2, counting_t_log_upper, CountingQuery};
pub use entropy::{binary_entropy, kl_binary};
pub use formulas::{
    capacity_upper_bound, in_capacity_region, noise_free_capacity, noisy_capacity, optimal_lambda, region_boundary,
    region_margin, scheme_rate, short_molecule_bound, tradeoff_point, CapacityResult, TradeoffPoint,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CapacityError {
    #[error("{name} = {value} is outside the domain: {reason}")]
    Domain {
        name: &'static str,
        value: String,
        reason: &'static str,
    },
    #[error("row {row} of the transition matrix sums to {sum}")]
    NotStochastic { row: usize, sum: f64 },
    #[error("transition matrix is malformed: {0}")]
    Malformed(String),
    #[error("Blahut-Arimoto did not converge in {iterations} iterations (gap {gap:e})")]
    NoConvergence { iterations: usize, gap: f64 },
    #[error("coupon bound needs xi > e^lambda / M (xi = {xi}, e^lambda / M = {threshold})")]
    VacuousRegime { xi: f64, threshold: f64 },
}

pub(crate) fn domain<T: std::fmt::Debug>(name: &'static str, value: T, reason: &'static str) -> CapacityError {
    CapacityError::Domain {
        name,
        value: format!("{value:?}"),
        reason,
    }
}
