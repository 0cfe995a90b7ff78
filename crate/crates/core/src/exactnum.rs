//! Exact rational scalars and the combinatorial constants built on them.
//!
//! [`Rational`] is an arbitrary-precision fraction that is always kept in
//! lowest terms with a positive denominator. Every exact path in the crate
//! (operator matrices, polynomial coefficients, Gaussian and exponential
//! moments) runs over this type; nothing is ever rounded.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use num_bigint::BigInt as Integer;

/// Arbitrary-precision rational number, normalized after every operation.
pub type Rational = num_rational::BigRational;

/// Builds the rational `num/den`. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n!` as an exact rational.
pub fn factorial(n: u32) -> Rational {
    Rational::from_integer(factorial_int(n))
}

pub(crate) fn factorial_int(n: u32) -> BigInt {
    (2..=n as u64).fold(BigInt::one(), |acc, k| acc * k)
}

/// Rising factorial `(mu)_s = mu (mu+1) ... (mu+s-1)`, with `(mu)_0 = 1`.
pub fn pochhammer(mu: &Rational, s: u32) -> Rational {
    let mut acc = Rational::one();
    let mut term = mu.clone();
    for _ in 0..s {
        acc *= &term;
        term += Rational::one();
    }
    acc
}

/// `(n-1)!!` for even `n`, i.e. the `n`-th moment of the standard normal
/// law; zero for odd `n`.
pub fn gaussian_moment(n: u32) -> Rational {
    Rational::from_integer(gaussian_moment_int(n))
}

pub(crate) fn gaussian_moment_int(n: u32) -> BigInt {
    if n % 2 == 1 {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    let mut k = 1u64;
    while k < n as u64 {
        acc *= k;
        k += 2;
    }
    acc
}

/// Binomial coefficient with the convention that it vanishes outside
/// `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> Rational {
    Rational::from_integer(binomial_int(n, k))
}

pub(crate) fn binomial_int(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Generalized binomial `binom(x, j) = x (x-1) ... (x-j+1) / j!` for a
/// rational upper argument.
pub fn binomial_rational(x: &Rational, j: u32) -> Rational {
    let mut acc = Rational::one();
    for i in 0..j {
        acc *= x - int(i as i64);
    }
    acc / factorial(j)
}

/// Multinomial coefficient `(sum parts)! / prod(parts!)`.
pub fn multinomial(parts: &[u32]) -> BigInt {
    let total: u32 = parts.iter().sum();
    let mut acc = factorial_int(total);
    for &p in parts {
        acc /= factorial_int(p);
    }
    acc
}

/// Nearest `f64` to an exact rational, robust to numerators and
/// denominators far outside the `f64` range.
pub fn to_f64(x: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (x.numer().to_f64(), x.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // Shift both to ~60 significant bits before dividing.
    let nb = x.numer().bits() as i64;
    let db = x.denom().bits() as i64;
    let shift_n = (nb - 60).max(0);
    let shift_d = (db - 60).max(0);
    let n = (x.numer().abs() >> shift_n as usize).to_f64().unwrap_or(f64::INFINITY);
    let d = (x.denom() >> shift_d as usize).to_f64().unwrap_or(f64::INFINITY);
    let mag = n / d * 2f64.powi((shift_n - shift_d) as i32);
    if x.is_negative() {
        -mag
    } else {
        mag
    }
}

/// Parses `"num/den"` or a bare integer.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Largest absolute value among the given rationals (zero for an empty set).
pub fn max_abs<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Rational {
    values
        .into_iter()
        .map(|v| v.abs())
        .fold(Rational::zero(), |a, b| if b > a { b } else { a })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0), int(1));
        assert_eq!(factorial(5), int(120));
        // repeated multiplication oracle
        let mut oracle: u64 = 1;
        for k in 1..=20u64 {
            oracle *= k;
        }
        assert_eq!(oracle, 2432902008176640000);
        assert_eq!(factorial(20), Rational::from_integer(BigInt::from(oracle)));
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(&int(1), 5), int(120));
        assert_eq!(pochhammer(&ratio(3, 2), 1), ratio(3, 2));
        assert_eq!(pochhammer(&int(2), 3), int(2 * 3 * 4));
        assert_eq!(pochhammer(&ratio(-7, 3), 0), int(1));
    }

    #[test]
    fn gaussian_moment_values() {
        assert_eq!(gaussian_moment(0), int(1));
        assert_eq!(gaussian_moment(3), int(0));
        assert_eq!(gaussian_moment(4), int(3));
    }

    #[test]
    fn gaussian_moment_double_factorial_identity() {
        for n in 0..=20u32 {
            let lhs = gaussian_moment(2 * n);
            let rhs = factorial(2 * n) / (factorial(n) * int(1i64 << n));
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(4, 2), int(6));
        assert_eq!(binomial(3, 5), int(0));
        assert_eq!(binomial(3, -1), int(0));
        // Pascal recurrence oracle
        let mut row = vec![1u64];
        for _ in 0..10 {
            let mut next = vec![1u64; row.len() + 1];
            for i in 1..row.len() {
                next[i] = row[i - 1] + row[i];
            }
            row = next;
        }
        assert_eq!(row[5], 252);
        assert_eq!(binomial(10, 5), int(252));
    }

    #[test]
    fn rational_binomial_matches_integer_case() {
        for n in 0..12i64 {
            for j in 0..=n as u32 {
                assert_eq!(binomial_rational(&int(n), j), binomial(n, j as i64));
            }
        }
        // binom(1/2, 2) = (1/2)(-1/2)/2 = -1/8
        assert_eq!(binomial_rational(&ratio(1, 2), 2), ratio(-1, 8));
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["3/4", "-7/2", "12", "0"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert!(parse_rational("1/0").is_none());
        assert_eq!(parse_rational("6/8"), Some(ratio(3, 4)));
    }

    #[test]
    fn to_f64_handles_huge_operands() {
        let big = factorial(200);
        let x = (big.clone() + int(1)) / (big * int(3));
        assert!((to_f64(&x) - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(to_f64(&ratio(-1, 4)), -0.25);
    }

    proptest! {
        #[test]
        fn pochhammer_step(num in -20i64..20, den in 1i64..9, s in 0u32..12) {
            let mu = ratio(num, den);
            let next = pochhammer(&mu, s + 1);
            prop_assert_eq!(next, pochhammer(&mu, s) * (mu.clone() + int(s as i64)));
        }

        #[test]
        fn add_sub_round_trip(a in -1000i64..1000, b in 1i64..1000, c in -1000i64..1000, d in 1i64..1000) {
            let x = ratio(a, b);
            let y = ratio(c, d);
            prop_assert_eq!((x.clone() + &y) - &y, x);
        }

        #[test]
        fn normalized_lowest_terms(a in -1000i64..1000, b in 1i64..1000, k in 1i64..50) {
            let x = ratio(a * k, -b * k);
            prop_assert!(x.denom() > &BigInt::zero());
            prop_assert_eq!(x, ratio(-a, b));
        }
    }
}
