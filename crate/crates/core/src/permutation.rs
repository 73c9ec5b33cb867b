//! Lexicographic rank of a sequence among all rearrangements of its multiset.
//!
//! Symbols are alphabet indices; index 0 sorts first. With `a < c < g < t`,
//! `agca` is rank 5 among the twelve arrangements of `<2,1,1,0>`.
//!
//! Both directions walk the sequence once and keep the running multinomial
//! `m! / prod(c_j!)` of the unvisited suffix up to date. The number of suffixes
//! that start with symbol `j` is `M * c_j / m`, which is always an integer, so
//! every step stays exact.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::combinatorics::multinomial;
use crate::composition::{FrequencyVector, RankIndex};
use crate::error::{Error, Result};

/// Rank of `symbols` among the permutations of its own frequency vector over
/// an alphabet of size `sigma`. The empty sequence has rank 0.
pub fn sequence_to_perm_index(symbols: &[u8], sigma: usize) -> Result<RankIndex> {
    let freq = FrequencyVector::of_symbols(symbols, sigma)?;
    Ok(rank_with_counts(symbols, &freq))
}

/// Ranks `symbols` whose frequency vector is already known to be `freq`.
pub(crate) fn rank_with_counts(symbols: &[u8], freq: &FrequencyVector) -> RankIndex {
    let mut counts = freq.counts().to_vec();
    let mut suffix_perms = multinomial(&counts);
    if let Some(m) = suffix_perms.to_u64() {
        return BigUint::from(rank_small(symbols, &mut counts, m));
    }
    let mut rank = BigUint::zero();
    let mut remaining = symbols.len() as u64;
    for &s in symbols {
        let k = s as usize;
        let smaller: u64 = counts[..k].iter().sum();
        if smaller > 0 {
            rank += &suffix_perms * smaller / remaining;
        }
        suffix_perms = suffix_perms * counts[k] / remaining;
        counts[k] -= 1;
        remaining -= 1;
    }
    rank
}

// Same walk in machine words; `M * c / m` never exceeds `M * m`, which fits
// in 128 bits whenever `M` fits in 64.
fn rank_small(symbols: &[u8], counts: &mut [u64], mut suffix_perms: u64) -> u64 {
    let mut rank = 0u64;
    let mut remaining = symbols.len() as u128;
    for &s in symbols {
        let k = s as usize;
        let smaller: u64 = counts[..k].iter().sum();
        rank += (suffix_perms as u128 * smaller as u128 / remaining) as u64;
        suffix_perms = (suffix_perms as u128 * counts[k] as u128 / remaining) as u64;
        counts[k] -= 1;
        remaining -= 1;
    }
    rank
}

/// The sequence with frequency vector `freq` ranked `pid`.
pub fn perm_index_to_sequence(pid: &RankIndex, freq: &FrequencyVector) -> Result<Vec<u8>> {
    let total = multinomial(freq.counts());
    unrank_with_total(pid, freq, total)
}

pub(crate) fn unrank_with_total(
    pid: &RankIndex,
    freq: &FrequencyVector,
    total: BigUint,
) -> Result<Vec<u8>> {
    if *pid >= total {
        return Err(Error::RankOutOfRange);
    }
    if freq.sigma() > 256 {
        return Err(Error::BadAlphabetSize);
    }
    let mut counts = freq.counts().to_vec();
    if let (Some(p), Some(m)) = (pid.to_u64(), total.to_u64()) {
        return Ok(unrank_small(p, &mut counts, m, freq.inner_sum()));
    }
    let mut pid = pid.clone();
    let mut suffix_perms = total;
    let mut remaining = freq.inner_sum();
    let mut out = Vec::with_capacity(remaining as usize);
    while remaining > 0 {
        let mut chosen = None;
        for (j, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let starting_with_j = &suffix_perms * c / remaining;
            if pid >= starting_with_j {
                pid -= &starting_with_j;
            } else {
                chosen = Some(j);
                suffix_perms = starting_with_j;
                break;
            }
        }
        // pid < suffix_perms holds on entry to every step, so some j is chosen.
        let j = chosen.expect("rank within bounds always selects a symbol");
        counts[j] -= 1;
        remaining -= 1;
        out.push(j as u8);
    }
    Ok(out)
}

fn unrank_small(mut pid: u64, counts: &mut [u64], mut suffix_perms: u64, mut remaining: u64) -> Vec<u8> {
    let mut out = Vec::with_capacity(remaining as usize);
    while remaining > 0 {
        let mut chosen = counts.len();
        for (j, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let starting_with_j = (suffix_perms as u128 * c as u128 / remaining as u128) as u64;
            if pid >= starting_with_j {
                pid -= starting_with_j;
            } else {
                chosen = j;
                suffix_perms = starting_with_j;
                break;
            }
        }
        counts[chosen] -= 1;
        remaining -= 1;
        out.push(chosen as u8);
    }
    out
}

/// All permutations of `freq` in rank order, refusing when there are more
/// than `guard`.
pub fn enumerate_perms(freq: &FrequencyVector, guard: usize) -> Result<Vec<Vec<u8>>> {
    if freq.sigma() > 256 {
        return Err(Error::BadAlphabetSize);
    }
    let total = multinomial(freq.counts());
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
    let mut current: Vec<u8> = freq
        .counts()
        .iter()
        .enumerate()
        .flat_map(|(j, &c)| core::iter::repeat_n(j as u8, c as usize))
        .collect();
    loop {
        out.push(current.clone());
        if !next_permutation(&mut current) {
            return Ok(out);
        }
    }
}

// Classic next-lexicographic-permutation step; handles repeated symbols.
fn next_permutation(v: &mut [u8]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
