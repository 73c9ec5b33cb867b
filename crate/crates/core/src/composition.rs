//! Ranking of frequency vectors among all vectors with the same dimension and
//! inner sum.
//!
//! The order is ascending on `(c_1, ..., c_{sigma-1})` with `c_1` most
//! significant. The last coordinate never influences the rank since it is
//! fixed by the inner sum. For `sigma = 4`, `ell = 4` this yields
//! `<0,0,0,4>` at rank 0 and `<4,0,0,0>` at rank 34.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::combinatorics::CombinatoricsContext;
use crate::error::{Error, Result};

/// Zero-based rank within an ordered finite set.
pub type RankIndex = BigUint;

/// Per-symbol occurrence counts with a fixed inner sum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FrequencyVector {
    counts: Vec<u64>,
    inner_sum: u64,
}

impl FrequencyVector {
    pub fn new(counts: Vec<u64>) -> Self {
        let inner_sum = counts.iter().sum();
        FrequencyVector { counts, inner_sum }
    }

    /// Validates a caller-declared inner sum against the counts.
    pub fn with_inner_sum(counts: Vec<u64>, declared: u64) -> Result<Self> {
        let v = Self::new(counts);
        if v.inner_sum != declared {
            return Err(Error::InnerSumMismatch { declared, actual: v.inner_sum });
        }
        Ok(v)
    }

    /// Counts the symbol indices of `symbols` over an alphabet of size `sigma`.
    pub fn of_symbols(symbols: &[u8], sigma: usize) -> Result<Self> {
        let mut counts = alloc::vec![0u64; sigma];
        for &s in symbols {
            let slot = counts
                .get_mut(s as usize)
                .ok_or(Error::SymbolOutOfRange { index: s as usize, sigma })?;
            *slot += 1;
        }
        Ok(FrequencyVector { counts, inner_sum: symbols.len() as u64 })
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn sigma(&self) -> usize {
        self.counts.len()
    }

    pub fn inner_sum(&self) -> u64 {
        self.inner_sum
    }

    pub fn nonzero_dims(&self) -> usize {
        self.counts.iter().filter(|&&c| c != 0).count()
    }

    /// Drops dimension `dim`, keeping the rest in order.
    pub fn without(&self, dim: usize) -> FrequencyVector {
        let counts: Vec<u64> = self
            .counts
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != dim)
            .map(|(_, &c)| c)
            .collect();
        FrequencyVector::new(counts)
    }

    /// Reinserts `value` at position `dim`.
    pub fn with_inserted(&self, dim: usize, value: u64) -> FrequencyVector {
        let mut counts = self.counts.clone();
        counts.insert(dim, value);
        FrequencyVector::new(counts)
    }

    pub fn into_counts(self) -> Vec<u64> {
        self.counts
    }
}

impl core::fmt::Display for FrequencyVector {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str("<")?;
        for (i, c) in self.counts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(">")
    }
}

/// Rank of `vector` among all vectors of its dimension and inner sum.
pub fn vector_to_index(vector: &FrequencyVector, ctx: &mut CombinatoricsContext) -> RankIndex {
    rank_inner(vector, ctx, None)
}

/// Same as [`vector_to_index`] but also returns every addend in the order it
/// was accumulated.
pub fn vector_to_index_traced(
    vector: &FrequencyVector,
    ctx: &mut CombinatoricsContext,
) -> (RankIndex, Vec<BigUint>) {
    let mut trace = Vec::new();
    let rank = rank_inner(vector, ctx, Some(&mut trace));
    (rank, trace)
}

fn rank_inner(
    vector: &FrequencyVector,
    ctx: &mut CombinatoricsContext,
    mut trace: Option<&mut Vec<BigUint>>,
) -> RankIndex {
    let sigma = vector.sigma();
    let mut rank = BigUint::zero();
    let mut remaining = vector.inner_sum();
    for dim in 0..sigma.saturating_sub(1) {
        let c = vector.counts[dim];
        // vectors that agree so far but hold j < c at this coordinate
        for j in 0..c {
            let block = ctx.k_count(sigma - dim - 1, remaining - j);
            rank += block;
            if let Some(t) = trace.as_deref_mut() {
                t.push(block.clone());
            }
        }
        remaining -= c;
    }
    rank
}

/// The vector of dimension `sigma` and inner sum `ell` ranked `index`.
pub fn index_to_vector(
    index: &RankIndex,
    ell: u64,
    sigma: usize,
    ctx: &mut CombinatoricsContext,
) -> Result<FrequencyVector> {
    if sigma == 0 {
        return Err(Error::InvalidParams("vector dimension must be at least 1"));
    }
    if index >= ctx.k_count(sigma, ell) {
        return Err(Error::RankOutOfRange);
    }
    let mut index = index.clone();
    let mut remaining = ell;
    let mut counts = alloc::vec![0u64; sigma];
    for (dim, count) in counts[..sigma - 1].iter_mut().enumerate() {
        // Once the sum is exhausted every later coordinate stays zero.
        while remaining > 0 {
            let block = ctx.k_count(sigma - dim - 1, remaining);
            if index >= *block {
                index -= block;
                *count += 1;
                remaining -= 1;
            } else {
                break;
            }
        }
    }
    counts[sigma - 1] = remaining;
    Ok(FrequencyVector { counts, inner_sum: ell })
}

/// Every vector of dimension `sigma` and inner sum `ell`, in rank order.
///
/// Refuses when there are more than `guard` of them.
pub fn enumerate_all(
    ell: u64,
    sigma: usize,
    guard: usize,
    ctx: &mut CombinatoricsContext,
) -> Result<Vec<FrequencyVector>> {
    if sigma == 0 {
        return Err(Error::InvalidParams("vector dimension must be at least 1"));
    }
    let total = ctx.k_count(sigma, ell);
    let total = match total.to_usize() {
        Some(t) if t <= guard => t,
        _ => {
            return Err(Error::TooLarge {
                cardinality: total.to_u64().unwrap_or(u64::MAX),
                guard,
            })
        }
    };
    let mut out = Vec::with_capacity(total);
    // Odometer over (c_1, ..., c_{sigma-1}) in ascending lexicographic order.
    let mut counts = alloc::vec![0u64; sigma];
    counts[sigma - 1] = ell;
    loop {
        out.push(FrequencyVector { counts: counts.clone(), inner_sum: ell });
        // advance: bump the rightmost free coordinate that still has room
        let mut dim = sigma - 1;
        loop {
            if dim == 0 {
                return Ok(out);
            }
            dim -= 1;
            let used: u64 = counts[..=dim].iter().sum();
            if used < ell {
                counts[dim] += 1;
                for c in counts[dim + 1..sigma - 1].iter_mut() {
                    *c = 0;
                }
                let prefix: u64 = counts[..sigma - 1].iter().sum();
                counts[sigma - 1] = ell - prefix;
                break;
            }
        }
    }
}
