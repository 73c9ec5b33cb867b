use thiserror::Error;

/// Which fixed-width field of a block a decode error refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    Length,
    FrequencyRank,
    PermutationRank,
}

impl core::fmt::Display for Field {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            Field::Length => "block length",
            Field::FrequencyRank => "frequency-vector rank",
            Field::PermutationRank => "permutation rank",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("frequency vector sums to {actual} but declares inner sum {declared}")]
    InnerSumMismatch { declared: u64, actual: u64 },
    #[error("rank is out of range for a set of the given cardinality")]
    RankOutOfRange,
    #[error("symbol index {index} is outside an alphabet of size {sigma}")]
    SymbolOutOfRange { index: usize, sigma: usize },
    #[error("byte 0x{byte:02x} at offset {offset} is not in the alphabet")]
    NotInAlphabet { byte: u8, offset: usize },
    #[error("set of size {cardinality} exceeds the materialisation guard of {guard}")]
    TooLarge { cardinality: u64, guard: usize },
    #[error("invalid codec parameters: {0}")]
    InvalidParams(&'static str),
    #[error("alphabet has a repeated symbol 0x{0:02x}")]
    DuplicateSymbol(u8),
    #[error("alphabet must contain between 1 and 256 symbols")]
    BadAlphabetSize,
    #[error("not an enumcode container (bad magic)")]
    BadMagic,
    #[error("unsupported container version {0}")]
    UnsupportedVersion(u8),
    #[error("malformed container header: {0}")]
    BadHeader(&'static str),
    #[error("payload truncated inside block {block}")]
    Truncated { block: u64 },
    #[error("{field} of block {block} is out of range")]
    CorruptField { block: u64, field: Field },
    #[error("unexpected data after final block {last_block}")]
    TrailingData { last_block: u64 },
}

pub type Result<T> = core::result::Result<T, Error>;
