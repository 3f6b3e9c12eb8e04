//! The shuffling-sampling channel.
//!
//! A stored list of `M` molecules (each `L` bits) passes through three stages:
//! every molecule is drawn `N_i ~ Q` times, every resulting read crosses a
//! binary symmetric channel independently, and the reads come out uniformly
//! shuffled. All randomness comes from an explicit generator, so a channel use
//! is a pure function of its inputs and the seed.

mod params;
mod sampling;
mod transmit;

pub use params::{ChannelOutput, ChannelParams, CodewordSet};
pub use sampling::{poisson, q0_of, sample_counts, CustomPmf, SamplingSpec, TRUNCATION_MASS};
pub use transmit::{apply_noise, expand, shuffle_reads, transmit, transmit_traced, Trace};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ChannelError {
    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("expected {expected} molecules, found {found}")]
    MoleculeCount { expected: usize, found: usize },
    #[error("molecule {index} has {found} bits, expected {expected}")]
    MoleculeLength {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("custom pmf: {0}")]
    Pmf(String),
}

pub(crate) fn invalid(name: &'static str, value: f64, reason: &'static str) -> ChannelError {
    ChannelError::InvalidParameter { name, value, reason }
}
