//! Exact counting kernel shared by the codecs.
//!
//! Everything here is integer arithmetic on [`BigUint`]; nothing on a ranking
//! path ever touches floating point.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Arbitrary-precision non-negative count.
pub type BigCount = BigUint;

/// Exact binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigCount {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    // acc == C(n - k + i, i) after step i, so every division is exact.
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

/// Number of ordered `parts`-tuples of positive integers summing to `total`,
/// i.e. `C(total - 1, parts - 1)`.
///
/// Panics if either argument is zero.
pub fn positive_compositions(parts: u64, total: u64) -> BigCount {
    assert!(parts >= 1 && total >= 1, "positive compositions need K >= 1 and N >= 1");
    binomial(total - 1, parts - 1)
}

/// `n! / (c_1! ... c_sigma!)` evaluated directly, where `n` is the sum of `counts`.
///
/// Built as a product of binomials over the running prefix sum, so it stays
/// exact and never materialises `n!`.
pub fn multinomial(counts: &[u64]) -> BigCount {
    let mut acc = BigUint::one();
    let mut prefix = 0u64;
    for &c in counts {
        prefix += c;
        if c != 0 && c != prefix {
            acc *= binomial(prefix, c);
        }
    }
    acc
}

/// Evaluates the zero-count summation form of the composition count literally:
/// `sum_{i=0}^{sigma-1} C(s-1, sigma-1-i) * C(sigma, i)`, where term `i`
/// counts the vectors with exactly `i` zero coordinates.
///
/// This exists only as a cross-check against [`CombinatoricsContext::k_count`].
/// The range stops at `sigma - 1` zeros, which misses the all-zero vector; it
/// is the only vector when `s = 0`, so that case contributes the single
/// `i = sigma` term instead.
pub fn k_count_sum_form(sigma: u64, s: u64) -> BigCount {
    assert!(sigma >= 1, "sigma must be at least 1");
    if s == 0 {
        return BigUint::one();
    }
    let mut total = BigUint::zero();
    for zeros in 0..sigma {
        total += binomial(s - 1, sigma - 1 - zeros) * binomial(sigma, zeros);
    }
    total
}

/// Memo tables for `K(sigma, s)` and small factorials.
///
/// A context grows on demand through `&mut self`. Share a pre-filled context
/// immutably (via [`CombinatoricsContext::k_count_cached`]) or give each worker
/// its own.
#[derive(Debug, Clone)]
pub struct CombinatoricsContext {
    // rows[sigma - 1][s] == K(sigma, s)
    rows: Vec<Vec<BigCount>>,
    factorials: Vec<BigCount>,
    factorial_bound: usize,
}

impl Default for CombinatoricsContext {
    fn default() -> Self {
        Self::new()
    }
}

impl CombinatoricsContext {
    pub const DEFAULT_FACTORIAL_BOUND: usize = 4096;

    pub fn new() -> Self {
        Self::with_factorial_bound(Self::DEFAULT_FACTORIAL_BOUND)
    }

    /// Factorials up to `bound` are cached once computed; larger ones are
    /// computed on the fly.
    pub fn with_factorial_bound(bound: usize) -> Self {
        CombinatoricsContext {
            rows: Vec::new(),
            factorials: alloc::vec![BigUint::one()],
            factorial_bound: bound,
        }
    }

    /// `K(sigma, s) = C(s + sigma - 1, sigma - 1)`, the number of
    /// `sigma`-dimensional non-negative vectors with inner sum `s`.
    pub fn k_count(&mut self, sigma: usize, s: u64) -> &BigCount {
        assert!(sigma >= 1, "sigma must be at least 1");
        self.fill(sigma, s);
        &self.rows[sigma - 1][s as usize]
    }

    /// Read-only lookup for contexts shared after a warm-up fill.
    pub fn k_count_cached(&self, sigma: usize, s: u64) -> Option<&BigCount> {
        self.rows.get(sigma.checked_sub(1)?)?.get(usize::try_from(s).ok()?)
    }

    /// Fills every `K(d, t)` with `d <= sigma`, `t <= s`.
    pub fn prefill(&mut self, sigma: usize, s: u64) {
        for d in 1..=sigma {
            self.fill(d, s);
        }
    }

    fn fill(&mut self, sigma: usize, s: u64) {
        while self.rows.len() < sigma {
            self.rows.push(alloc::vec![BigUint::one()]);
        }
        let row = &mut self.rows[sigma - 1];
        let want = s as usize;
        let d = (sigma - 1) as u64;
        while row.len() <= want {
            // C(t + d, d) = C(t - 1 + d, d) * (t + d) / t
            let t = row.len() as u64;
            let next = row[row.len() - 1].clone() * (t + d) / t;
            row.push(next);
        }
    }

    pub fn factorial(&mut self, n: u64) -> BigCount {
        let n_usize = n as usize;
        if n_usize < self.factorials.len() {
            return self.factorials[n_usize].clone();
        }
        if n_usize <= self.factorial_bound {
            while self.factorials.len() <= n_usize {
                let k = self.factorials.len() as u64;
                let next = &self.factorials[self.factorials.len() - 1] * k;
                self.factorials.push(next);
            }
            return self.factorials[n_usize].clone();
        }
        let top = self.factorials.len() as u64 - 1;
        let mut acc = self.factorials[top as usize].clone();
        for k in top + 1..=n {
            acc *= k;
        }
        acc
    }

    /// Multinomial via the factorial table: `n! / prod(c_i!)`.
    pub fn multinomial_factorial_form(&mut self, counts: &[u64]) -> BigCount {
        let n: u64 = counts.iter().sum();
        let mut denom = BigUint::one();
        for &c in counts {
            if c > 1 {
                denom *= self.factorial(c);
            }
        }
        self.factorial(n) / denom
    }
}

/// Width in bits of a fixed field able to hold any value in `[0, cardinality)`:
/// `ceil(log2(cardinality))`, zero when the cardinality is 0 or 1.
pub fn field_width(cardinality: &BigUint) -> u64 {
    if cardinality <= &BigUint::one() {
        0
    } else {
        (cardinality - 1u32).bits()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_k(sigma: usize, s: u64) -> u64 {
        // Count sigma-tuples of non-negative integers summing to s.
        fn go(left_dims: usize, left_sum: u64) -> u64 {
            if left_dims == 1 {
                return 1;
            }
            (0..=left_sum).map(|v| go(left_dims - 1, left_sum - v)).sum()
        }
        go(sigma, s)
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(5, 3), BigUint::from(10u32));
        assert_eq!(binomial(0, 0), BigUint::from(1u32));
        // 2-subsets of a 7-set, enumerated.
        let mut pairs = 0u32;
        for a in 0..7 {
            for b in a + 1..7 {
                let _ = (a, b);
                pairs += 1;
            }
        }
        assert_eq!(pairs, 21);
        assert_eq!(binomial(7, 2), BigUint::from(pairs));
        assert_eq!(binomial(3, 5), BigUint::zero());
    }

    #[test]
    fn multinomial_examples() {
        assert_eq!(multinomial(&[3, 2]), BigUint::from(10u32));
        // 7!/(2!1!2!2!) = 5040/8
        assert_eq!(5040 / 8, 630);
        assert_eq!(multinomial(&[2, 1, 2, 2]), BigUint::from(630u32));
        assert_eq!(multinomial(&[4, 0, 0, 0]), BigUint::one());
        assert_eq!(multinomial(&[]), BigUint::one());
    }

    #[test]
    fn k_count_examples() {
        let mut ctx = CombinatoricsContext::new();
        assert_eq!(*ctx.k_count(4, 4), BigUint::from(35u32));
        assert_eq!(*ctx.k_count(3, 5), BigUint::from(21u32));
        for s in 0..50 {
            assert_eq!(*ctx.k_count(1, s), BigUint::one());
        }
        for d in 1..10 {
            assert_eq!(*ctx.k_count(d, 0), BigUint::one());
        }
        assert_eq!(ctx.k_count_cached(4, 4), Some(&BigUint::from(35u32)));
        assert_eq!(ctx.k_count_cached(9, 400), None);
    }

    #[test]
    fn sum_form_examples() {
        assert_eq!(k_count_sum_form(4, 4), BigUint::from(35u32));
        assert_eq!(k_count_sum_form(3, 3), BigUint::from(10u32));
        assert_eq!(k_count_sum_form(2, 2), BigUint::from(3u32));
        assert_eq!(k_count_sum_form(5, 0), BigUint::one());
    }

    #[test]
    fn positive_composition_examples() {
        // positive 4-tuples summing to 8, enumerated
        let mut count = 0u32;
        for a in 1..8u32 {
            for b in 1..8u32 {
                for c in 1..8u32 {
                    if a + b + c < 8 {
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(count, 35);
        assert_eq!(positive_compositions(4, 8), BigUint::from(count));
        assert_eq!(positive_compositions(1, 17), BigUint::one());
        assert_eq!(positive_compositions(9, 9), BigUint::one());
    }

    #[test]
    fn k_count_matches_sum_form_and_brute_force() {
        let mut ctx = CombinatoricsContext::new();
        for sigma in 1..=8usize {
            for s in 0..=64u64 {
                let closed = ctx.k_count(sigma, s).clone();
                assert_eq!(closed, k_count_sum_form(sigma as u64, s), "sigma={sigma} s={s}");
                assert_eq!(closed, binomial(s + sigma as u64 - 1, sigma as u64 - 1));
            }
        }
        for sigma in 1..=5usize {
            for s in 0..=12u64 {
                assert_eq!(*ctx.k_count(sigma, s), BigUint::from(brute_k(sigma, s)));
            }
        }
    }

    #[test]
    fn k_count_dimension_recurrence() {
        let mut ctx = CombinatoricsContext::new();
        for sigma in 2..=7usize {
            for n in 0..=30u64 {
                let lhs = ctx.k_count(sigma, n).clone();
                let rhs = (0..=n).fold(BigUint::zero(), |acc, j| acc + ctx.k_count(sigma - 1, n - j));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn factorial_table_and_overflow_path_agree() {
        let mut small = CombinatoricsContext::with_factorial_bound(5);
        let mut large = CombinatoricsContext::new();
        for n in 0..40 {
            assert_eq!(small.factorial(n), large.factorial(n));
        }
        assert_eq!(
            small.multinomial_factorial_form(&[2, 1, 2, 2]),
            BigUint::from(630u32)
        );
    }

    #[test]
    fn field_widths() {
        assert_eq!(field_width(&BigUint::zero()), 0);
        assert_eq!(field_width(&BigUint::one()), 0);
        assert_eq!(field_width(&BigUint::from(2u32)), 1);
        assert_eq!(field_width(&BigUint::from(21u32)), 5);
        assert_eq!(field_width(&BigUint::from(32u32)), 5);
        assert_eq!(field_width(&BigUint::from(33u32)), 6);
    }

    proptest! {
        #[test]
        fn pascal_recurrence(n in 1u64..200, k in 1u64..200) {
            prop_assume!(k <= n);
            prop_assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
        }

        #[test]
        fn multinomial_is_order_invariant(mut counts in proptest::collection::vec(0u64..12, 1..7), seed in any::<u64>()) {
            let before = multinomial(&counts);
            // deterministic shuffle
            let len = counts.len();
            let mut state = seed | 1;
            for i in (1..len).rev() {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                counts.swap(i, (state % (i as u64 + 1)) as usize);
            }
            prop_assert_eq!(before, multinomial(&counts));
        }

        #[test]
        fn multinomial_forms_agree(counts in proptest::collection::vec(0u64..20, 0..6)) {
            let mut ctx = CombinatoricsContext::with_factorial_bound(16);
            prop_assert_eq!(multinomial(&counts), ctx.multinomial_factorial_form(&counts));
        }
    }
}
