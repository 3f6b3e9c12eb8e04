use serde::Serialize;

use super::{invalid, ChannelError, SamplingSpec};
use crate::bits::BitString;

/// One storage experiment: `M` molecules of `L` bits, BSC crossover `p`, and
/// the sampling distribution.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChannelParams {
    m: usize,
    l: usize,
    beta: f64,
    beta_eff: f64,
    p: f64,
    sampling: SamplingSpec,
}

impl ChannelParams {
    /// Sets `L = ceil(beta * log2 M)`; `beta_eff = L / log2 M` records the
    /// rounding and is what capacity comparisons should use.
    pub fn new(m: usize, beta: f64, p: f64, sampling: SamplingSpec) -> Result<Self, ChannelError> {
        if !(beta.is_finite() && beta > 0.0) {
            return Err(invalid("beta", beta, "must be finite and positive"));
        }
        check_m(m)?;
        let raw = beta * (m as f64).log2();
        // absorb rounding noise so exact products like 2 * log2(256) stay 16
        let l = ((raw - 1e-9).ceil() as usize).max(1);
        let mut params = Self::with_length(m, l, p, sampling)?;
        params.beta = beta;
        Ok(params)
    }

    /// Fixes `L` directly; `beta = beta_eff = L / log2 M`.
    pub fn with_length(m: usize, l: usize, p: f64, sampling: SamplingSpec) -> Result<Self, ChannelError> {
        check_m(m)?;
        if l == 0 {
            return Err(invalid("L", 0.0, "must be at least 1"));
        }
        if !(0.0..0.5).contains(&p) {
            return Err(invalid("p", p, "must lie in [0, 1/2)"));
        }
        sampling.validate()?;
        let beta_eff = l as f64 / (m as f64).log2();
        Ok(Self {
            m,
            l,
            beta: beta_eff,
            beta_eff,
            p,
            sampling,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn l(&self) -> usize {
        self.l
    }

    /// Requested `beta`.
    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `L / log2 M`, never below [`Self::beta`].
    pub fn beta_eff(&self) -> f64 {
        self.beta_eff
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn sampling(&self) -> &SamplingSpec {
        &self.sampling
    }

    pub fn q0(&self) -> f64 {
        super::q0_of(&self.sampling)
    }
}

fn check_m(m: usize) -> Result<(), ChannelError> {
    if m < 2 {
        Err(invalid("M", m as f64, "must be at least 2"))
    } else {
        Ok(())
    }
}

/// The `M` synthesized molecules, in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodewordSet {
    l: usize,
    molecules: Vec<BitString>,
}

impl CodewordSet {
    pub fn new(l: usize, molecules: Vec<BitString>) -> Result<Self, ChannelError> {
        if let Some((index, mol)) = molecules.iter().enumerate().find(|(_, x)| x.len() != l) {
            return Err(ChannelError::MoleculeLength {
                index,
                expected: l,
                found: mol.len(),
            });
        }
        Ok(Self { l, molecules })
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn m(&self) -> usize {
        self.molecules.len()
    }

    pub fn molecules(&self) -> &[BitString] {
        &self.molecules
    }

    pub fn into_molecules(self) -> Vec<BitString> {
        self.molecules
    }
}

/// The reads leaving the channel. Order carries no information.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChannelOutput {
    l: usize,
    reads: Vec<BitString>,
}

impl ChannelOutput {
    pub fn new(l: usize, reads: Vec<BitString>) -> Result<Self, ChannelError> {
        if let Some((index, r)) = reads.iter().enumerate().find(|(_, x)| x.len() != l) {
            return Err(ChannelError::MoleculeLength {
                index,
                expected: l,
                found: r.len(),
            });
        }
        Ok(Self { l, reads })
    }

    pub fn l(&self) -> usize {
        self.l
    }

    /// Number of reads `N`.
    pub fn n(&self) -> usize {
        self.reads.len()
    }

    pub fn reads(&self) -> &[BitString] {
        &self.reads
    }

    pub fn into_reads(self) -> Vec<BitString> {
        self.reads
    }
}
