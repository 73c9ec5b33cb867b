//! Enumerative coding of sequences over small alphabets.
//!
//! A sequence is described by the symbol frequencies of each block plus the
//! block's rank among all rearrangements with those frequencies. The
//! frequency vector itself is ranked among all vectors with the same inner
//! sum instead of being stored coordinate by coordinate.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod alphabet;
pub mod analysis;
pub mod bits;
pub mod block;
pub mod combinatorics;
pub mod composition;
pub mod error;
pub mod permutation;

pub use alphabet::Alphabet;
pub use block::{decode, encode, CodecParams, Mode};
pub use combinatorics::{BigCount, CombinatoricsContext};
pub use composition::{FrequencyVector, RankIndex};
pub use error::{Error, Result};
