use rand::Rng;

use super::{CodecConfig, CodecError, InnerCode, ReedSolomon};
use crate::bits::BitString;
use crate::channel::{ChannelOutput, CodewordSet};

/// The information to store, exactly [`CodecConfig::message_bits`] long.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Message(BitString);

impl Message {
    pub fn new(bits: BitString, cfg: &CodecConfig) -> Result<Self, CodecError> {
        if bits.len() != cfg.message_bits() {
            return Err(CodecError::MessageLength {
                expected: cfg.message_bits(),
                found: bits.len(),
            });
        }
        Ok(Self(bits))
    }

    pub fn random<R: Rng + ?Sized>(cfg: &CodecConfig, rng: &mut R) -> Self {
        Self(BitString::from_bools(
            (0..cfg.message_bits()).map(|_| rng.gen::<bool>()),
        ))
    }

    pub fn bits(&self) -> &BitString {
        &self.0
    }

    pub fn into_bits(self) -> BitString {
        self.0
    }
}

/// What the decoder saw and produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeReport {
    /// `None` when more molecules were erased than the outer code absorbs.
    /// `Some` does not certify correctness: undetected index swaps and
    /// payload errors pass through.
    pub message: Option<Message>,
    /// Indices with no usable symbol (never seen, or in collision).
    pub erasures: usize,
    /// Indices that received conflicting symbols.
    pub collisions: usize,
    /// Reads whose decoded index was `>= M` and were dropped.
    pub out_of_range: usize,
    /// Set when any read decoded to an index `>= M`.
    pub undetected_risk: bool,
}

impl DecodeReport {
    pub fn success(&self) -> bool {
        self.message.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Slot {
    Empty,
    Symbols(Vec<u16>),
    Collision,
}

/// A [`CodecConfig`] with its inner code and outer code built.
#[derive(Debug, Clone)]
pub struct Codec {
    cfg: CodecConfig,
    inner: InnerCode,
    outer: ReedSolomon,
}

impl Codec {
    pub fn new(cfg: CodecConfig) -> Result<Self, CodecError> {
        let inner = InnerCode::new(cfg.inner(), cfg.l())?;
        let outer = ReedSolomon::new(cfg.m(), cfg.outer_k(), cfg.field_width())?;
        Ok(Self { cfg, inner, outer })
    }

    pub fn config(&self) -> &CodecConfig {
        &self.cfg
    }

    pub fn inner(&self) -> &InnerCode {
        &self.inner
    }

    /// Outer-encodes the message into `M` symbol tuples, prefixes each with
    /// its index and inner-encodes it.
    pub fn encode(&self, msg: &Message) -> Result<CodewordSet, CodecError> {
        let cfg = &self.cfg;
        let bits = msg.bits();
        if bits.len() != cfg.message_bits() {
            return Err(CodecError::MessageLength {
                expected: cfg.message_bits(),
                found: bits.len(),
            });
        }
        let w = cfg.field_width() as usize;
        let s = cfg.symbols_per_molecule();
        let columns: Vec<Vec<u16>> = (0..s)
            .map(|c| {
                let data: Vec<u16> = (0..cfg.outer_k())
                    .map(|j| bits.read_uint((j * s + c) * w, w) as u16)
                    .collect();
                self.outer.encode(&data)
            })
            .collect();
        let molecules = (0..cfg.m())
            .map(|i| {
                let mut info = BitString::from_uint(i as u64, cfg.index_bits());
                for col in &columns {
                    info.push_uint(col[i] as u64, w);
                }
                info.push_uint(0, cfg.padding_bits());
                self.inner.encode(&info)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CodewordSet::new(cfg.l(), molecules)?)
    }

    /// Inner-decodes every read, keeps indices whose reads agree, erases
    /// missing and colliding indices, then erasure-decodes the outer code.
    pub fn decode(&self, out: &ChannelOutput) -> Result<DecodeReport, CodecError> {
        let cfg = &self.cfg;
        if out.l() != cfg.l() {
            return Err(CodecError::SizeMismatch {
                expected: cfg.l(),
                found: out.l(),
            });
        }
        let w = cfg.field_width() as usize;
        let s = cfg.symbols_per_molecule();
        let mut slots = vec![Slot::Empty; cfg.m()];
        let mut out_of_range = 0;
        for read in out.reads() {
            let info = self.inner.decode(read)?;
            let index = info.read_uint(0, cfg.index_bits()) as usize;
            if index >= cfg.m() {
                out_of_range += 1;
                continue;
            }
            let symbols: Vec<u16> = (0..s)
                .map(|c| info.read_uint(cfg.index_bits() + c * w, w) as u16)
                .collect();
            let slot = &mut slots[index];
            match slot {
                Slot::Empty => *slot = Slot::Symbols(symbols),
                Slot::Symbols(prev) if *prev == symbols => {}
                Slot::Symbols(_) => *slot = Slot::Collision,
                Slot::Collision => {}
            }
        }
        let collisions = slots.iter().filter(|s| **s == Slot::Collision).count();
        let erasures = slots.iter().filter(|s| !matches!(s, Slot::Symbols(_))).count();
        let mut report = DecodeReport {
            message: None,
            erasures,
            collisions,
            out_of_range,
            undetected_risk: out_of_range > 0,
        };
        if erasures > cfg.max_erasures() {
            return Ok(report);
        }
        let mut columns = Vec::with_capacity(s);
        for c in 0..s {
            let received: Vec<Option<u16>> = slots
                .iter()
                .map(|slot| match slot {
                    Slot::Symbols(v) => Some(v[c]),
                    _ => None,
                })
                .collect();
            columns.push(self.outer.decode(&received)?);
        }
        let mut bits = BitString::zeros(0);
        for j in 0..cfg.outer_k() {
            for col in &columns {
                bits.push_uint(col[j] as u64, w);
            }
        }
        report.message = Some(Message(bits));
        Ok(report)
    }
}

/// Builds the codec and encodes once.
pub fn encode_message(msg: &Message, cfg: &CodecConfig) -> Result<CodewordSet, CodecError> {
    Codec::new(cfg.clone())?.encode(msg)
}

/// Builds the codec and decodes once.
pub fn decode_output(out: &ChannelOutput, cfg: &CodecConfig) -> Result<DecodeReport, CodecError> {
    Codec::new(cfg.clone())?.decode(out)
}
