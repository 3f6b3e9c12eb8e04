use num_rational::Ratio;
use serde::Serialize;

use super::gf::MAX_FIELD_WIDTH;
use super::{CodecError, InnerCodeSpec};

/// Geometry of the index-based concatenated code.
///
/// Each molecule's inner info word is `index ‖ symbols ‖ padding`: the
/// `index_bits`-wide index first (big-endian), then one `field_width`-bit
/// symbol from each of `symbols_per_molecule` interleaved Reed–Solomon
/// codewords of length `M` and dimension `outer_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CodecConfig {
    m: usize,
    l: usize,
    index_bits: usize,
    inner: InnerCodeSpec,
    outer_k: usize,
    field_width: u32,
    symbols_per_molecule: usize,
}

impl CodecConfig {
    /// Picks the smallest field width `w >= index_bits` (so `2^w >= M`) that
    /// divides the payload; if none up to 16 does, the width leaving the
    /// fewest padding bits.
    pub fn new(m: usize, l: usize, inner: InnerCodeSpec, outer_k: usize) -> Result<Self, CodecError> {
        if m < 2 {
            return Err(CodecError::Config(format!("need at least 2 molecules, got {m}")));
        }
        if outer_k == 0 || outer_k > m {
            return Err(CodecError::Config(format!("outer_k = {outer_k} must lie in 1..={m}")));
        }
        let index_bits = index_width(m);
        let info = inner.info_bits(l);
        if info <= index_bits {
            return Err(CodecError::Config(format!(
                "inner code carries {info} bits, no room beyond the {index_bits}-bit index"
            )));
        }
        let payload = info - index_bits;
        let min_w = index_bits.max(1) as u32;
        if min_w > MAX_FIELD_WIDTH {
            return Err(CodecError::Config(format!(
                "M = {m} needs a field wider than 2^{MAX_FIELD_WIDTH}"
            )));
        }
        let candidates = (min_w..=MAX_FIELD_WIDTH).filter(|&w| w as usize <= payload);
        let field_width = candidates.min_by_key(|&w| (payload % w as usize, w)).ok_or_else(|| {
            CodecError::Config(format!(
                "payload of {payload} bits cannot hold one {min_w}-bit outer symbol"
            ))
        })?;
        Ok(Self {
            m,
            l,
            index_bits,
            inner,
            outer_k,
            field_width,
            symbols_per_molecule: payload / field_width as usize,
        })
    }

    /// Outer dimension `floor((1 - q - eps2) M)`, the erasure margin made
    /// explicit.
    pub fn with_erasure_margin(
        m: usize,
        l: usize,
        inner: InnerCodeSpec,
        q: f64,
        eps2: f64,
    ) -> Result<Self, CodecError> {
        let k = ((1.0 - q - eps2) * m as f64).floor();
        if !(k >= 1.0) {
            return Err(CodecError::Config(format!(
                "q + eps2 = {} leaves no outer dimension",
                q + eps2
            )));
        }
        Self::new(m, l, inner, k as usize)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn index_bits(&self) -> usize {
        self.index_bits
    }

    pub fn inner(&self) -> InnerCodeSpec {
        self.inner
    }

    pub fn outer_k(&self) -> usize {
        self.outer_k
    }

    pub fn field_width(&self) -> u32 {
        self.field_width
    }

    pub fn symbols_per_molecule(&self) -> usize {
        self.symbols_per_molecule
    }

    /// `floor(L r_inner)`.
    pub fn info_bits(&self) -> usize {
        self.inner.info_bits(self.l)
    }

    /// Inner info bits left after the index.
    pub fn payload_bits(&self) -> usize {
        self.info_bits() - self.index_bits
    }

    pub fn padding_bits(&self) -> usize {
        self.payload_bits() - self.symbols_per_molecule * self.field_width as usize
    }

    /// Message length in bits.
    pub fn message_bits(&self) -> usize {
        self.outer_k * self.symbols_per_molecule * self.field_width as usize
    }

    /// Largest number of erased molecules the outer code absorbs.
    pub fn max_erasures(&self) -> usize {
        self.m - self.outer_k
    }

    /// Message bits per stored base, exactly. Equals
    /// `(outer_k / M) (floor(L r_inner) - index_bits) / L` when no padding is
    /// needed.
    pub fn achieved_rate_exact(&self) -> Ratio<u64> {
        Ratio::new(self.message_bits() as u64, (self.m * self.l) as u64)
    }

    pub fn achieved_rate(&self) -> f64 {
        let r = self.achieved_rate_exact();
        *r.numer() as f64 / *r.denom() as f64
    }
}

/// `ceil(log2 m)`.
pub fn index_width(m: usize) -> usize {
    (usize::BITS - (m - 1).leading_zeros()) as usize
}

/// Free-function form of [`CodecConfig::achieved_rate`].
pub fn achieved_rate(cfg: &CodecConfig) -> f64 {
    cfg.achieved_rate()
}
