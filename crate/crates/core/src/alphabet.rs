use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Ordered byte alphabet. Position in the list is the symbol index, and index
/// 0 sorts first in every lexicographic order.
#[derive(Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<u8>,
    lookup: [u16; 256],
}

const ABSENT: u16 = u16::MAX;

impl Alphabet {
    pub fn new(symbols: &[u8]) -> Result<Self> {
        if symbols.is_empty() || symbols.len() > 256 {
            return Err(Error::BadAlphabetSize);
        }
        let mut lookup = [ABSENT; 256];
        for (i, &b) in symbols.iter().enumerate() {
            if lookup[b as usize] != ABSENT {
                return Err(Error::DuplicateSymbol(b));
            }
            lookup[b as usize] = i as u16;
        }
        Ok(Alphabet { symbols: symbols.to_vec(), lookup })
    }

    /// Sorted set of distinct bytes in `data`; `None` for empty input.
    pub fn discover(data: &[u8]) -> Option<Self> {
        let mut seen = [false; 256];
        for &b in data {
            seen[b as usize] = true;
        }
        let symbols: Vec<u8> = (0..=255u8).filter(|&b| seen[b as usize]).collect();
        Alphabet::new(&symbols).ok()
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn index_of(&self, byte: u8) -> Option<usize> {
        match self.lookup[byte as usize] {
            ABSENT => None,
            i => Some(i as usize),
        }
    }

    pub fn symbol(&self, index: usize) -> Option<u8> {
        self.symbols.get(index).copied()
    }

    /// Maps bytes to symbol indices, naming the first offending offset.
    pub fn to_indices(&self, data: &[u8]) -> Result<Vec<u8>> {
        data.iter()
            .enumerate()
            .map(|(offset, &byte)| match self.lookup[byte as usize] {
                ABSENT => Err(Error::NotInAlphabet { byte, offset }),
                i => Ok(i as u8),
            })
            .collect()
    }

    pub fn to_bytes(&self, indices: &[u8]) -> Result<Vec<u8>> {
        indices
            .iter()
            .map(|&i| {
                self.symbol(i as usize)
                    .ok_or(Error::SymbolOutOfRange { index: i as usize, sigma: self.len() })
            })
            .collect()
    }
}

impl core::fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_tuple("Alphabet").field(&self.symbols).finish()
    }
}
