//! Newline-delimited text form of molecule and read lists.
//!
//! ```text
//! M=<count> L=<bits>
//! 0110...
//! ```
//!
//! `M` is the number of lines that follow: the molecule count for a
//! [`CodewordSet`], the read count `N` for a [`ChannelOutput`].

use std::fmt::Write as _;

use super::CodecError;
use crate::bits::BitString;
use crate::channel::{ChannelOutput, CodewordSet};

fn write_lines(l: usize, lines: &[BitString]) -> String {
    let mut s = String::with_capacity(16 + lines.len() * (l + 1));
    writeln!(s, "M={} L={}", lines.len(), l).expect("writing to a String");
    for line in lines {
        writeln!(s, "{line}").expect("writing to a String");
    }
    s
}

fn parse_lines(text: &str) -> Result<(usize, Vec<BitString>), CodecError> {
    let parse_err = |line: usize, reason: String| CodecError::Parse { line, reason };
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| parse_err(1, "missing header".into()))?;
    let mut count = None;
    let mut len = None;
    for field in header.split_whitespace() {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| parse_err(1, format!("malformed header field {field:?}")))?;
        let value: usize = value.parse().map_err(|e| parse_err(1, format!("{key}: {e}")))?;
        match key {
            "M" => count = Some(value),
            "L" => len = Some(value),
            _ => return Err(parse_err(1, format!("unknown header key {key:?}"))),
        }
    }
    let (count, len) = match (count, len) {
        (Some(c), Some(l)) => (c, l),
        _ => return Err(parse_err(1, "header needs M= and L=".into())),
    };
    let reads = lines
        .enumerate()
        .map(|(i, line)| {
            let bits: BitString = line.parse().map_err(|e| parse_err(i + 2, format!("{e}")))?;
            if bits.len() != len {
                return Err(parse_err(i + 2, format!("{} bits, expected {len}", bits.len())));
            }
            Ok(bits)
        })
        .collect::<Result<Vec<_>, _>>()?;
    if reads.len() != count {
        return Err(parse_err(
            count.min(reads.len()) + 2,
            format!("header announces {count} lines, found {}", reads.len()),
        ));
    }
    Ok((len, reads))
}

pub fn codewords_to_text(set: &CodewordSet) -> String {
    write_lines(set.l(), set.molecules())
}

pub fn codewords_from_text(text: &str) -> Result<CodewordSet, CodecError> {
    let (l, reads) = parse_lines(text)?;
    Ok(CodewordSet::new(l, reads)?)
}

pub fn output_to_text(out: &ChannelOutput) -> String {
    write_lines(out.l(), out.reads())
}

pub fn output_from_text(text: &str) -> Result<ChannelOutput, CodecError> {
    let (l, reads) = parse_lines(text)?;
    Ok(ChannelOutput::new(l, reads)?)
}
