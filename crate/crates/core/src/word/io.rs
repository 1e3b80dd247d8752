//! Word serialisation: one-line digit strings (`0-9a-z`, so bases up to 36)
//! and raw byte-per-symbol files.

use std::fs;
use std::path::Path;

use super::{check_base, WordError};

const DIGITS: &[u8; 36] = b"0123456789abcdefghijklmnopqrstuvwxyz";

pub fn to_digit_string(symbols: &[u8]) -> Result<String, WordError> {
    symbols
        .iter()
        .map(|&s| {
            DIGITS
                .get(s as usize)
                .map(|&c| c as char)
                .ok_or_else(|| WordError::Parse(format!("symbol {s} has no single-character digit")))
        })
        .collect()
}

/// Parses a digit string; surrounding whitespace is ignored.
pub fn parse_digit_string(text: &str, base: u32) -> Result<Vec<u8>, WordError> {
    check_base(base)?;
    text.trim()
        .chars()
        .enumerate()
        .map(|(position, c)| {
            let value = c
                .to_digit(36)
                .ok_or_else(|| WordError::Parse(format!("invalid digit {c:?} at {position}")))?;
            if value >= base {
                return Err(WordError::SymbolOutOfRange {
                    symbol: value,
                    base,
                    position,
                });
            }
            Ok(value as u8)
        })
        .collect()
}

pub fn read_digit_file(path: &Path, base: u32) -> Result<Vec<u8>, WordError> {
    parse_digit_string(&fs::read_to_string(path)?, base)
}

pub fn read_byte_file(path: &Path, base: u32) -> Result<Vec<u8>, WordError> {
    check_base(base)?;
    let bytes = fs::read(path)?;
    if let Some(position) = bytes.iter().position(|&b| u32::from(b) >= base) {
        return Err(WordError::SymbolOutOfRange {
            symbol: bytes[position].into(),
            base,
            position,
        });
    }
    Ok(bytes)
}

pub fn write_byte_file(path: &Path, symbols: &[u8]) -> Result<(), WordError> {
    fs::write(path, symbols)?;
    Ok(())
}
