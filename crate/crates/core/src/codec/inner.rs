//! Inner codes protecting each molecule against BSC noise.

use std::collections::HashSet;

use num_rational::Ratio;
use rand::Rng;
use serde::Serialize;

use super::CodecError;
use crate::bits::BitString;
use crate::rng::rng_from_seed;

/// Largest `k_info` for which the ML table is enumerated.
pub const MAX_TABLE_BITS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "inner", rename_all = "snake_case")]
pub enum InnerCodeSpec {
    Identity,
    /// Each info bit sent `r` times; `r` odd.
    Repetition {
        r: usize,
    },
    /// `2^k_info` distinct random words drawn from `seed`, decoded by
    /// exhaustive minimum Hamming distance.
    TableMl {
        k_info: usize,
        seed: u64,
    },
}

impl InnerCodeSpec {
    /// Info bits carried by a length-`l` word.
    pub fn info_bits(&self, l: usize) -> usize {
        match *self {
            InnerCodeSpec::Identity => l,
            InnerCodeSpec::Repetition { r } => l / r.max(1),
            InnerCodeSpec::TableMl { k_info, .. } => k_info,
        }
    }

    /// Exact code rate for length `l`.
    pub fn rate(&self, l: usize) -> Ratio<u64> {
        match *self {
            InnerCodeSpec::Identity => Ratio::from_integer(1),
            InnerCodeSpec::Repetition { r } => Ratio::new(1, r as u64),
            InnerCodeSpec::TableMl { k_info, .. } => Ratio::new(k_info as u64, l as u64),
        }
    }
}

/// An inner code instantiated for a molecule length.
#[derive(Debug, Clone)]
pub struct InnerCode {
    spec: InnerCodeSpec,
    l: usize,
    codebook: Vec<u64>,
}

impl InnerCode {
    pub fn new(spec: InnerCodeSpec, l: usize) -> Result<Self, CodecError> {
        if l == 0 {
            return Err(CodecError::Config("molecule length must be positive".into()));
        }
        let codebook = match spec {
            InnerCodeSpec::Identity => Vec::new(),
            InnerCodeSpec::Repetition { r } => {
                if r == 0 || r % 2 == 0 {
                    return Err(CodecError::Config(format!("repetition factor {r} must be odd")));
                }
                if !l.is_multiple_of(r) {
                    return Err(CodecError::Config(format!("L = {l} is not a multiple of r = {r}")));
                }
                Vec::new()
            }
            InnerCodeSpec::TableMl { k_info, seed } => {
                if k_info == 0 || k_info > MAX_TABLE_BITS {
                    return Err(CodecError::Config(format!(
                        "table code needs 1 <= k_info <= {MAX_TABLE_BITS}, got {k_info}"
                    )));
                }
                if l > 64 || l < k_info {
                    return Err(CodecError::Config(format!(
                        "table code needs k_info <= L <= 64, got k_info = {k_info}, L = {l}"
                    )));
                }
                random_codebook(k_info, l, seed)
            }
        };
        Ok(Self { spec, l, codebook })
    }

    pub fn spec(&self) -> InnerCodeSpec {
        self.spec
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn info_bits(&self) -> usize {
        self.spec.info_bits(self.l)
    }

    /// Codewords of the table code as big-endian integers (empty otherwise).
    pub fn codebook(&self) -> &[u64] {
        &self.codebook
    }

    pub fn encode(&self, info: &BitString) -> Result<BitString, CodecError> {
        check_len(info.len(), self.info_bits())?;
        Ok(match self.spec {
            InnerCodeSpec::Identity => info.clone(),
            InnerCodeSpec::Repetition { r } => {
                BitString::from_bools(info.iter().flat_map(|b| std::iter::repeat_n(b, r)))
            }
            InnerCodeSpec::TableMl { k_info, .. } => {
                let word = self.codebook[info.read_uint(0, k_info) as usize];
                BitString::from_uint(word, self.l)
            }
        })
    }

    pub fn decode(&self, read: &BitString) -> Result<BitString, CodecError> {
        check_len(read.len(), self.l)?;
        Ok(match self.spec {
            InnerCodeSpec::Identity => read.clone(),
            InnerCodeSpec::Repetition { r } => BitString::from_bools((0..self.l / r).map(|i| {
                let ones = (i * r..(i + 1) * r).filter(|&j| read.get(j)).count();
                2 * ones > r
            })),
            InnerCodeSpec::TableMl { k_info, .. } => {
                let y = read.read_uint(0, self.l);
                // min_by_key keeps the first minimum: ties go to the lowest index
                let best = self
                    .codebook
                    .iter()
                    .enumerate()
                    .min_by_key(|&(_, &c)| (c ^ y).count_ones())
                    .map(|(i, _)| i)
                    .expect("codebook is nonempty");
                BitString::from_uint(best as u64, k_info)
            }
        })
    }
}

fn check_len(found: usize, expected: usize) -> Result<(), CodecError> {
    if found == expected {
        Ok(())
    } else {
        Err(CodecError::SizeMismatch { expected, found })
    }
}

fn random_codebook(k_info: usize, l: usize, seed: u64) -> Vec<u64> {
    let mut rng = rng_from_seed(seed);
    let mask = if l == 64 { u64::MAX } else { (1u64 << l) - 1 };
    let size = 1usize << k_info;
    let mut seen = HashSet::with_capacity(size);
    let mut book = Vec::with_capacity(size);
    while book.len() < size {
        let w = rng.gen::<u64>() & mask;
        if seen.insert(w) {
            book.push(w);
        }
    }
    book
}
