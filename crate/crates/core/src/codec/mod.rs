//! Index-based concatenated coding for the shuffling-sampling channel.
//!
//! The message is split across `M` molecules by an outer Reed–Solomon
//! erasure code; each molecule carries its position as an explicit index so
//! the decoder can undo the shuffle, and an inner code protects index and
//! payload against bit flips. Lost molecules and index collisions both become
//! outer-code erasures.

mod config;
mod gf;
mod inner;
mod rs;
mod scheme;
mod short;
pub mod textio;

pub use config::{achieved_rate, index_width, CodecConfig};
pub use gf::{GaloisField, MAX_FIELD_WIDTH};
pub use inner::{InnerCode, InnerCodeSpec, MAX_TABLE_BITS};
pub use rs::ReedSolomon;
pub use scheme::{decode_output, encode_message, Codec, DecodeReport, Message};
pub use short::{short_molecule_decode, short_molecule_encode, ShortDecode, MAX_SHORT_LEN};

use crate::channel::ChannelError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CodecError {
    #[error("invalid codec configuration: {0}")]
    Config(String),
    #[error("message has {found} bits, expected {expected}")]
    MessageLength { expected: usize, found: usize },
    #[error("expected {expected} bits, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("{erasures} erasures exceed the outer code's {max}")]
    TooManyErasures { erasures: usize, max: usize },
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error(transparent)]
    Channel(#[from] ChannelError),
}
