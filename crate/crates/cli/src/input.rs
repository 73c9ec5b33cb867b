//! Reading sequence files.
//!
//! Plain files are taken byte for byte. FASTA files lose their `>` header
//! lines and line breaks, are uppercased, and must contain only `ACGT` unless
//! a replacement symbol is given for everything else.

use std::fs;
use std::path::Path;

use enumcode::{Alphabet, Error};

use crate::error::{CliError, Result};

pub const DNA: &[u8] = b"ACGT";

#[derive(Debug, Clone, Copy, Default)]
pub struct ReadOptions {
    pub fasta: bool,
    /// FASTA only: symbol substituted for any non-`ACGT` residue.
    pub fasta_other: Option<u8>,
}

pub fn read_sequence(path: &Path, opts: ReadOptions) -> Result<Vec<u8>> {
    let raw = fs::read(path).map_err(|e| CliError::io(path, e))?;
    if opts.fasta {
        parse_fasta(&raw, opts.fasta_other).map_err(|e| CliError::codec(path, e))
    } else {
        Ok(raw)
    }
}

/// Concatenated residues of every record, offsets in errors refer to `raw`.
pub fn parse_fasta(raw: &[u8], other: Option<u8>) -> enumcode::Result<Vec<u8>> {
    let mut out = Vec::with_capacity(raw.len());
    let mut offset = 0;
    for line in raw.split_inclusive(|&b| b == b'\n') {
        let start = offset;
        offset += line.len();
        if line.first() == Some(&b'>') || line.first() == Some(&b';') {
            continue;
        }
        for (i, &b) in line.iter().enumerate() {
            if b.is_ascii_whitespace() {
                continue;
            }
            let up = b.to_ascii_uppercase();
            if DNA.contains(&up) {
                out.push(up);
            } else if let Some(sub) = other {
                out.push(sub);
            } else {
                return Err(Error::NotInAlphabet { byte: b, offset: start + i });
            }
        }
    }
    Ok(out)
}

/// Picks the alphabet for `data`: explicit list, then FASTA's `ACGT`, then the
/// sorted distinct bytes. Empty input without either falls back to `fallback`.
pub fn resolve_alphabet(
    explicit: Option<&str>,
    fasta: bool,
    data: &[u8],
    fallback: u8,
) -> std::result::Result<Alphabet, CliError> {
    if let Some(s) = explicit {
        return Alphabet::new(s.as_bytes())
            .map_err(|e| CliError::Usage(format!("--alphabet {s:?}: {e}")));
    }
    if fasta {
        return Ok(Alphabet::new(DNA).expect("static alphabet"));
    }
    Ok(Alphabet::discover(data)
        .unwrap_or_else(|| Alphabet::new(&[fallback]).expect("one symbol")))
}

/// Parses a symbol given on the command line (a single byte).
pub fn parse_symbol(s: &str) -> std::result::Result<u8, String> {
    match s.as_bytes() {
        [b] => Ok(*b),
        _ => Err(format!("expected a single-byte symbol, got {s:?}")),
    }
}
