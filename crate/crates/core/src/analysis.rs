//! Bit-budget analytics: finite-set entropy and the cost of ranked versus
//! naive frequency vectors.
//!
//! All logarithms are base 2 and are taken of exact integers. A big integer
//! is reduced to its top 64 bits plus a power-of-two exponent before the
//! float log, so no Stirling-style approximation is on any computation path.

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::combinatorics::{binomial, multinomial, CombinatoricsContext};
use crate::composition::FrequencyVector;

/// `log2(x)` of an exact integer; `-inf` for zero.
pub fn log2_big(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 64 {
        return libm::log2(x.to_u64().expect("fits in 64 bits") as f64);
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().expect("top 64 bits");
    libm::log2(top as f64) + shift as f64
}

/// `log2(n! / prod(c_i!))`, the bits needed to pick one arrangement of `freq`.
pub fn finite_set_h0(freq: &FrequencyVector) -> f64 {
    log2_big(&multinomial(freq.counts()))
}

/// [`finite_set_h0`] divided by the inner sum; zero for an empty vector.
pub fn finite_set_h0_per_symbol(freq: &FrequencyVector) -> f64 {
    match freq.inner_sum() {
        0 => 0.0,
        n => finite_set_h0(freq) / n as f64,
    }
}

/// One row of the naive-versus-ranked frequency vector comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VectorCostRow {
    pub n: u64,
    /// `(sigma - 1) * log2(n + 1)`: one counter per free coordinate.
    pub naive_bits: f64,
    /// `log2 K(sigma, n)`: rank among all vectors with inner sum `n`.
    pub enum_bits: f64,
}

impl VectorCostRow {
    pub fn gap(&self) -> f64 {
        self.naive_bits - self.enum_bits
    }
}

/// Rows for `n = 1 ..= n_max`.
pub fn naive_vs_enumerated(sigma: usize, n_max: u64, ctx: &mut CombinatoricsContext) -> Vec<VectorCostRow> {
    assert!(sigma >= 2, "comparison needs at least two symbols");
    (1..=n_max)
        .map(|n| VectorCostRow {
            n,
            naive_bits: (sigma - 1) as f64 * libm::log2((n + 1) as f64),
            enum_bits: log2_big(ctx.k_count(sigma, n)),
        })
        .collect()
}

/// Bits saved by ranking a `sigma`-dimensional frequency vector with inner
/// sum `n` instead of storing `sigma - 1` counters of `log2(n + 1)` bits:
/// `(sigma - 1) * log2(n + 1) - log2 C(n + sigma - 1, sigma - 1)`.
///
/// Writing the binomial with Stirling's formula and keeping only the leading
/// terms gives the popular estimate `(sigma - 1) * log2(sigma - 1)` (see
/// [`gain_estimate`]). That estimate drops `n * log2(1 + (sigma - 1) / n)`,
/// which tends to `(sigma - 1) * log2(e)` rather than zero, and the square-root
/// factor. Since `C(n + sigma - 1, sigma - 1) ~ n^(sigma - 1) / (sigma - 1)!`,
/// the gain really converges to `log2((sigma - 1)!)` ([`gain_limit`]), from
/// below.
pub fn enumeration_gain(sigma: u64, n: u64) -> f64 {
    assert!(sigma >= 2 && n >= 1);
    let naive = (sigma - 1) as f64 * libm::log2((n + 1) as f64);
    naive - log2_big(&binomial(n + sigma - 1, sigma - 1))
}

/// `(sigma - 1) * log2(sigma - 1)`, the leading-term estimate of the gain.
pub fn gain_estimate(sigma: u64) -> f64 {
    let d = (sigma - 1) as f64;
    d * libm::log2(d)
}

/// `log2((sigma - 1)!)`, the exact limit of [`enumeration_gain`] as `n` grows.
pub fn gain_limit(sigma: u64) -> f64 {
    libm::lgamma(sigma as f64) / core::f64::consts::LN_2
}

/// Per-file bit accounting in bits per symbol.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropyReport {
    pub file_id: String,
    pub n: u64,
    pub counts: Vec<u64>,
    pub finite_set_h0_bits_per_base: f64,
    pub fixed_len_bits_per_base: f64,
    pub variable_len_bits_per_base: f64,
    pub alpha: u8,
    pub r: u32,
    pub fixed_len: u32,
    pub avg_block_len: f64,
}
