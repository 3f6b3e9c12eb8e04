use rand::seq::SliceRandom;
use rand::Rng;

use super::{sample_counts, ChannelError, ChannelOutput, ChannelParams, CodewordSet};
use crate::bits::BitString;

/// Test-harness side channel: where each output read came from.
///
/// Decoders only ever see a [`ChannelOutput`], which carries none of this.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    /// `counts[i]` = number of times molecule `i` was drawn.
    pub counts: Vec<u32>,
    /// `provenance[j]` = source molecule of output read `j`.
    pub provenance: Vec<usize>,
    /// Total bits flipped by the BSC stage.
    pub flips: usize,
}

impl Trace {
    /// Number of distinct molecules with at least one read.
    pub fn distinct_seen(&self) -> usize {
        self.counts.iter().filter(|&&c| c > 0).count()
    }
}

/// Repeats molecule `i` `counts[i]` times, in molecule order.
pub fn expand(molecules: &[BitString], counts: &[u32]) -> (Vec<BitString>, Vec<usize>) {
    assert_eq!(molecules.len(), counts.len());
    let total: usize = counts.iter().map(|&c| c as usize).sum();
    let mut reads = Vec::with_capacity(total);
    let mut provenance = Vec::with_capacity(total);
    for (i, (mol, &c)) in molecules.iter().zip(counts).enumerate() {
        for _ in 0..c {
            reads.push(mol.clone());
            provenance.push(i);
        }
    }
    (reads, provenance)
}

/// Flips every bit independently with probability `p`; returns the number of
/// flips. Duplicate reads of one molecule get independent noise.
pub fn apply_noise<R: Rng + ?Sized>(reads: &mut [BitString], p: f64, rng: &mut R) -> usize {
    if p <= 0.0 {
        return 0;
    }
    let mut flips = 0;
    for read in reads.iter_mut() {
        for i in 0..read.len() {
            if rng.gen::<f64>() < p {
                read.flip(i);
                flips += 1;
            }
        }
    }
    flips
}

/// Uniform random permutation (Fisher–Yates).
pub fn shuffle_reads<T, R: Rng + ?Sized>(reads: &mut [T], rng: &mut R) {
    reads.shuffle(rng);
}

/// One channel use: sample counts, expand, corrupt, shuffle.
pub fn transmit<R: Rng + ?Sized>(
    codeword: &CodewordSet,
    params: &ChannelParams,
    rng: &mut R,
) -> Result<ChannelOutput, ChannelError> {
    transmit_traced(codeword, params, rng).map(|(out, _)| out)
}

/// [`transmit`] plus the provenance [`Trace`]. Consumes the generator
/// identically, so both produce the same reads for the same seed.
pub fn transmit_traced<R: Rng + ?Sized>(
    codeword: &CodewordSet,
    params: &ChannelParams,
    rng: &mut R,
) -> Result<(ChannelOutput, Trace), ChannelError> {
    if codeword.m() != params.m() {
        return Err(ChannelError::MoleculeCount {
            expected: params.m(),
            found: codeword.m(),
        });
    }
    if codeword.l() != params.l() {
        return Err(ChannelError::MoleculeLength {
            index: 0,
            expected: params.l(),
            found: codeword.l(),
        });
    }
    let counts = sample_counts(params.sampling(), params.m(), rng);
    let (mut reads, provenance) = expand(codeword.molecules(), &counts);
    let flips = apply_noise(&mut reads, params.p(), rng);
    let mut tagged: Vec<(BitString, usize)> = reads.into_iter().zip(provenance).collect();
    shuffle_reads(&mut tagged, rng);
    let (reads, provenance): (Vec<_>, Vec<_>) = tagged.into_iter().unzip();
    let out = ChannelOutput::new(params.l(), reads)?;
    Ok((
        out,
        Trace {
            counts,
            provenance,
            flips,
        },
    ))
}
