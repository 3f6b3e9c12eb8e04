//! Repetition-index scheme for molecules shorter than `log2 M`.
//!
//! Every molecule is `(L-1)`-bit index ‖ 1 info bit, so `2^(L-1)` bits are
//! stored; the `M` molecules cycle through the segments, giving each one
//! `floor` or `ceil` of `M / 2^(L-1)` copies.

use super::CodecError;
use crate::bits::BitString;
use crate::channel::{ChannelOutput, CodewordSet};

/// Largest `L` accepted; `2^(L-1)` segments are tabulated.
pub const MAX_SHORT_LEN: usize = 25;

fn segments(l: usize) -> Result<usize, CodecError> {
    if !(2..=MAX_SHORT_LEN).contains(&l) {
        return Err(CodecError::Config(format!(
            "short molecules need 2 <= L <= {MAX_SHORT_LEN}, got {l}"
        )));
    }
    Ok(1 << (l - 1))
}

pub fn short_molecule_encode(bits: &BitString, m: usize, l: usize) -> Result<CodewordSet, CodecError> {
    let segs = segments(l)?;
    if bits.len() != segs {
        return Err(CodecError::SizeMismatch {
            expected: segs,
            found: bits.len(),
        });
    }
    if m < segs {
        return Err(CodecError::Config(format!("M = {m} cannot hold {segs} segments")));
    }
    let molecules = (0..m)
        .map(|t| {
            let j = t % segs;
            let mut mol = BitString::from_uint(j as u64, l - 1);
            mol.push(bits.get(j));
            mol
        })
        .collect();
    Ok(CodewordSet::new(l, molecules)?)
}

/// Per-bit majority votes; `None` marks an index never observed or tied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShortDecode {
    pub bits: Vec<Option<bool>>,
}

impl ShortDecode {
    /// All bits, if every one was decided.
    pub fn recovered(&self) -> Option<BitString> {
        self.bits
            .iter()
            .copied()
            .collect::<Option<Vec<bool>>>()
            .map(BitString::from_bools)
    }

    pub fn decided(&self) -> usize {
        self.bits.iter().filter(|b| b.is_some()).count()
    }
}

pub fn short_molecule_decode(out: &ChannelOutput, l: usize) -> Result<ShortDecode, CodecError> {
    let segs = segments(l)?;
    if out.l() != l {
        return Err(CodecError::SizeMismatch {
            expected: l,
            found: out.l(),
        });
    }
    // (ones, zeros) per index
    let mut votes = vec![(0u32, 0u32); segs];
    for read in out.reads() {
        let j = read.read_uint(0, l - 1) as usize;
        if read.get(l - 1) {
            votes[j].0 += 1;
        } else {
            votes[j].1 += 1;
        }
    }
    let bits = votes
        .into_iter()
        .map(|(ones, zeros)| match ones.cmp(&zeros) {
            std::cmp::Ordering::Greater => Some(true),
            std::cmp::Ordering::Less => Some(false),
            std::cmp::Ordering::Equal => None,
        })
        .collect();
    Ok(ShortDecode { bits })
}
