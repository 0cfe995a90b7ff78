//! Word-parity counts for four-letter multisets and the closed
//! double-binomial formula, two exact routes to the Laguerre
//! coefficients `Q(a,b,c,d)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{binomial_int, factorial_int, multinomial, Rational};

/// Enumeration cap on the number of distinct words.
pub const DEFAULT_WORD_CAP: u128 = 10_000_000;

/// The multiset `1^a 2^b 3^c 4^d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WordSpec {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
}

impl WordSpec {
    pub fn new(a: u32, b: u32, c: u32, d: u32) -> Self {
        WordSpec { a, b, c, d }
    }

    pub fn len(&self) -> u32 {
        self.a + self.b + self.c + self.d
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn word_count(&self) -> BigInt {
        multinomial(&[self.a, self.b, self.c, self.d])
    }

    /// The sorted word `1^a 2^b 3^c 4^d`.
    pub fn elementary(&self) -> Vec<u8> {
        let mut w = Vec::with_capacity(self.len() as usize);
        for (letter, count) in [(1u8, self.a), (2, self.b), (3, self.c), (4, self.d)] {
            w.extend(std::iter::repeat(letter).take(count as usize));
        }
        w
    }
}

/// Even- and odd-distance word counts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ParityCount {
    pub even: u64,
    pub odd: u64,
}

impl ParityCount {
    pub fn signed(&self) -> i64 {
        self.even as i64 - self.odd as i64
    }
}

/// Position of the leftmost entry the next lexicographic permutation
/// changes, or `None` if `w` is already the last permutation.
fn pivot(w: &[u8]) -> Option<usize> {
    (1..w.len()).rev().find(|&i| w[i - 1] < w[i]).map(|i| i - 1)
}

/// Advances `w` to the next lexicographic permutation given its pivot.
fn advance(w: &mut [u8], p: usize) {
    let j = (p + 1..w.len()).rev().find(|&j| w[j] > w[p]).unwrap();
    w.swap(p, j);
    w[p + 1..].reverse();
}

/// Walks every distinct arrangement of the multiset and tallies the parity
/// of its Hamming distance to the elementary word.
pub fn parity_count(spec: WordSpec, cap: u128) -> Result<ParityCount> {
    let total = spec.word_count();
    let total_u: u128 = total.try_into().unwrap_or(u128::MAX);
    if total_u > cap {
        return Err(Error::CapExceeded {
            what: "word enumeration (use q_explicit for large multisets)",
            size: total_u,
            cap,
        });
    }
    let e = spec.elementary();
    let mut w = e.clone();
    let mut dist = 0usize;
    let mut out = ParityCount::default();
    loop {
        if dist % 2 == 0 {
            out.even += 1;
        } else {
            out.odd += 1;
        }
        // Only the suffix from the pivot on changes.
        let Some(p) = pivot(&w) else { break };
        let old = (p..w.len()).filter(|&i| w[i] != e[i]).count();
        advance(&mut w, p);
        let new = (p..w.len()).filter(|&i| w[i] != e[i]).count();
        dist = dist + new - old;
    }
    Ok(out)
}

/// `#even - #odd` over all words of the multiset.
pub fn signed_count(spec: WordSpec, cap: u128) -> Result<i64> {
    Ok(parity_count(spec, cap)?.signed())
}

/// `Q(a,b,c,d) = (#even - #odd) / 2^N`; the empty multiset gives 1, the
/// value of the defining integral.
pub fn q_from_words(spec: WordSpec, cap: u128) -> Result<Rational> {
    if spec.is_empty() {
        return Ok(Rational::one());
    }
    let s = signed_count(spec, cap)?;
    Ok(Rational::new(BigInt::from(s), BigInt::one() << spec.len() as usize))
}

/// `Σ_r (-1)^r binom(a, r) binom(b, u - r)`.
fn alternating_convolution(a: u32, b: u32, u: u32) -> BigInt {
    let mut acc = BigInt::zero();
    for r in 0..=u.min(a) {
        let term = binomial_int(a as i64, r as i64) * binomial_int(b as i64, (u - r) as i64);
        if r % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Closed form
/// `2^{-N} Σ_u (a+b-u)!(c+d-u)!(u!)²/(a!b!c!d!) · (Σ_{r,s} (-1)^{r+s} binom(a,r)binom(b,u-r)binom(c,s)binom(d,u-s))²`.
/// The inner double sum factors into two alternating convolutions.
pub fn q_explicit(a: u32, b: u32, c: u32, d: u32) -> Rational {
    let n = a + b + c + d;
    let big_u = (a + b).min(c + d);
    let mut acc = BigInt::zero();
    for u in 0..=big_u {
        let inner = alternating_convolution(a, b, u) * alternating_convolution(c, d, u);
        if inner.is_zero() {
            continue;
        }
        let fu = factorial_int(u);
        acc += factorial_int(a + b - u) * factorial_int(c + d - u) * &fu * &fu * &inner * &inner;
    }
    let den = factorial_int(a) * factorial_int(b) * factorial_int(c) * factorial_int(d) * (BigInt::one() << n as usize);
    Rational::new(acc, den)
}

/// All `(a,b,c,d)` with `a+b+c+d ≤ max_n`, in lexicographic order.
pub fn grid(max_n: u32) -> Vec<WordSpec> {
    let mut out = Vec::new();
    for a in 0..=max_n {
        for b in 0..=max_n - a {
            for c in 0..=max_n - a - b {
                for d in 0..=max_n - a - b - c {
                    out.push(WordSpec::new(a, b, c, d));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, ratio};
    use proptest::prelude::*;

    #[test]
    fn hand_enumerations() {
        assert_eq!(signed_count(WordSpec::new(1, 0, 1, 0), DEFAULT_WORD_CAP).unwrap(), 2);
        assert_eq!(signed_count(WordSpec::new(1, 1, 1, 1), DEFAULT_WORD_CAP).unwrap(), 8);
        assert_eq!(signed_count(WordSpec::new(5, 0, 0, 0), DEFAULT_WORD_CAP).unwrap(), 1);
        assert_eq!(q_from_words(WordSpec::new(1, 0, 1, 0), DEFAULT_WORD_CAP).unwrap(), ratio(1, 2));
        assert_eq!(q_from_words(WordSpec::new(0, 0, 0, 0), DEFAULT_WORD_CAP).unwrap(), int(1));
    }

    #[test]
    fn explicit_small_values() {
        assert_eq!(q_explicit(0, 0, 0, 0), int(1));
        assert_eq!(q_explicit(1, 0, 1, 0), ratio(1, 2));
        assert_eq!(q_explicit(1, 1, 1, 1), ratio(1, 2));
    }

    #[test]
    fn distance_tracking_matches_direct_count() {
        // brute force: all 4^N strings filtered to the multiset
        let spec = WordSpec::new(2, 1, 1, 2);
        let e = spec.elementary();
        let n = e.len();
        let mut direct = ParityCount::default();
        for code in 0..4usize.pow(n as u32) {
            let w: Vec<u8> = (0..n).map(|i| (code / 4usize.pow(i as u32) % 4) as u8 + 1).collect();
            let mut sorted = w.clone();
            sorted.sort();
            if sorted != e {
                continue;
            }
            let dist = w.iter().zip(&e).filter(|(x, y)| x != y).count();
            if dist % 2 == 0 {
                direct.even += 1;
            } else {
                direct.odd += 1;
            }
        }
        assert_eq!(parity_count(spec, DEFAULT_WORD_CAP).unwrap(), direct);
    }

    #[test]
    fn cap_is_enforced() {
        let err = signed_count(WordSpec::new(3, 3, 3, 3), 1000).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { .. }));
        // 12!/(3!)^4
        let ok = parity_count(WordSpec::new(3, 3, 3, 3), DEFAULT_WORD_CAP).unwrap();
        assert_eq!(ok.even + ok.odd, 369600);
    }

    #[test]
    fn explicit_literal_double_sum() {
        for spec in grid(6) {
            let WordSpec { a, b, c, d } = spec;
            let n = spec.len();
            let mut acc = Rational::zero();
            for u in 0..=(a + b).min(c + d) {
                let mut dbl = BigInt::zero();
                for r in 0..=u {
                    for s in 0..=u {
                        let t = binomial_int(a as i64, r as i64)
                            * binomial_int(b as i64, (u - r) as i64)
                            * binomial_int(c as i64, s as i64)
                            * binomial_int(d as i64, (u - s) as i64);
                        if (r + s) % 2 == 0 {
                            dbl += t;
                        } else {
                            dbl -= t;
                        }
                    }
                }
                let num = factorial_int(a + b - u) * factorial_int(c + d - u) * factorial_int(u) * factorial_int(u) * &dbl * &dbl;
                let den = factorial_int(a) * factorial_int(b) * factorial_int(c) * factorial_int(d);
                acc += Rational::new(num, den);
            }
            acc /= Rational::from_integer(BigInt::one() << n as usize);
            assert_eq!(acc, q_explicit(a, b, c, d), "{spec:?}");
        }
    }

    #[test]
    fn grid_size() {
        // number of (a,b,c,d) with sum ≤ n is binom(n+4, 4)
        assert_eq!(grid(10).len(), 1001);
    }

    proptest! {
        #[test]
        fn relabeling_symmetries(a in 0u32..4, b in 0u32..4, c in 0u32..4, d in 0u32..4) {
            let base = signed_count(WordSpec::new(a, b, c, d), DEFAULT_WORD_CAP).unwrap();
            prop_assert_eq!(base, signed_count(WordSpec::new(b, a, c, d), DEFAULT_WORD_CAP).unwrap());
            prop_assert_eq!(base, signed_count(WordSpec::new(a, b, d, c), DEFAULT_WORD_CAP).unwrap());
            prop_assert_eq!(base, signed_count(WordSpec::new(c, d, a, b), DEFAULT_WORD_CAP).unwrap());
        }

        #[test]
        fn parities_partition_all_words(a in 0u32..4, b in 0u32..4, c in 0u32..4, d in 0u32..4) {
            let spec = WordSpec::new(a, b, c, d);
            let pc = parity_count(spec, DEFAULT_WORD_CAP).unwrap();
            prop_assert_eq!(BigInt::from(pc.even + pc.odd), spec.word_count());
        }
    }
}
