//! Hermite, Laguerre and Gegenbauer polynomials with exact coefficients.
//!
//! Conventions:
//!
//! * `H_n` are the *probabilists'* Hermite polynomials: monic, orthogonal
//!   for `dγ(x) = (2π)^{-1/2} e^{-x²/2} dx`, with `∫ H_n² dγ = n!`. (The
//!   physicists' family used in quantum mechanics texts is `2^{n/2} H_n(√2 x)`
//!   and is *not* what this module builds.)
//! * `L_n^{(ν)}` are the generalized Laguerre polynomials, orthogonal for
//!   `e^{-x} x^ν dx` on `(0, ∞)` with `∫ (L_n^{(ν)})² e^{-x} x^ν = Γ(n+ν+1)/n!`.
//! * `C_n^ν` are the Gegenbauer polynomials with `C_n^ν(1) = Γ(n+2ν)/(Γ(2ν) n!)`.
//!
//! Scaled Hermite products `H_m(λx)` with `λ² = 1/k` are handled by
//! [`GradedPoly`], which stores the `x^J` coefficient without its implicit
//! `λ^J`; only `λ²` is ever materialized, so integrals stay in ℚ.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{
    binomial, binomial_rational, factorial, factorial_int, gaussian_moment_int, int, ratio,
    to_f64, Rational,
};

/// Dense univariate polynomial, coefficients in ascending powers of `x`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Poly::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> Rational {
        self.coeffs.get(j).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `p(c·x)`.
    pub fn dilate(&self, c: &Rational) -> Poly {
        let mut pow = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pow);
            pow *= c;
        }
        Poly::new(out)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + to_f64(c))
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::one(), |acc, _| &acc * self)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|j| self.coeff(j) + rhs.coeff(j)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|j| self.coeff(j) - rhs.coeff(j)).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Poly::new(out)
    }
}

/// A polynomial in `λx` whose `x^J` coefficient implicitly carries `λ^J`,
/// together with the exact value of `λ²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPoly {
    pub coeffs: Poly,
    pub lambda_sq: Rational,
}

impl GradedPoly {
    /// `p(λx)` for the given `λ²`.
    pub fn scaled(p: &Poly, lambda_sq: &Rational) -> Self {
        GradedPoly {
            coeffs: p.clone(),
            lambda_sq: lambda_sq.clone(),
        }
    }

    pub fn one(lambda_sq: &Rational) -> Self {
        GradedPoly::scaled(&Poly::one(), lambda_sq)
    }

    pub fn mul(&self, other: &GradedPoly) -> GradedPoly {
        debug_assert_eq!(self.lambda_sq, other.lambda_sq);
        GradedPoly {
            coeffs: &self.coeffs * &other.coeffs,
            lambda_sq: self.lambda_sq.clone(),
        }
    }

    /// Parity shared by every nonzero power of `x`, if there is one.
    pub fn parity(&self) -> Option<usize> {
        let mut found = None;
        for (j, c) in self.coeffs.coeffs().iter().enumerate() {
            if !c.is_zero() {
                match found {
                    None => found = Some(j % 2),
                    Some(p) if p != j % 2 => return None,
                    _ => {}
                }
            }
        }
        found
    }
}

/// A value of the form `coeff · λ^lambda_power` with `lambda_power ∈ {0, 1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaScaled {
    pub coeff: Rational,
    pub lambda_power: u32,
}

/// `H_n` (probabilists', monic) via `H_{n+1} = x H_n - n H_{n-1}`.
pub fn hermite(n: u32) -> Poly {
    hermite_table(n).pop().unwrap()
}

/// `[H_0, ..., H_n]`.
pub fn hermite_table(n: u32) -> Vec<Poly> {
    let mut table = vec![Poly::one()];
    if n == 0 {
        return table;
    }
    table.push(Poly::x());
    for k in 1..n {
        let next = &(&Poly::x() * &table[k as usize]) - &table[k as usize - 1].scale(&int(k as i64));
        table.push(next);
    }
    table
}

/// `H_n(0)`: zero for odd `n`, `(-1)^{n/2} (n-1)!!` for even `n`.
pub fn hermite_at_zero(n: u32) -> Rational {
    if n % 2 == 1 {
        return Rational::zero();
    }
    let v = Rational::from_integer(gaussian_moment_int(n));
    if (n / 2) % 2 == 1 {
        -v
    } else {
        v
    }
}

fn check_laguerre_nu(nu: &Rational) -> Result<()> {
    if *nu <= int(-1) {
        return Err(Error::InvalidParameter(format!(
            "Laguerre parameter must exceed -1, got {nu}"
        )));
    }
    Ok(())
}

/// Generalized Laguerre polynomial
/// `L_n^{(ν)}(x) = Σ_j (-1)^j binom(n+ν, n-j) x^j / j!`.
pub fn laguerre(n: u32, nu: &Rational) -> Result<Poly> {
    check_laguerre_nu(nu)?;
    let top = nu + int(n as i64);
    let coeffs = (0..=n)
        .map(|j| {
            let c = binomial_rational(&top, n - j) / factorial(j);
            if j % 2 == 1 {
                -c
            } else {
                c
            }
        })
        .collect();
    Ok(Poly::new(coeffs))
}

/// Gegenbauer polynomial via
/// `n C_n = 2u (n+ν-1) C_{n-1} - (n+2ν-2) C_{n-2}`, `C_0 = 1`, `C_1 = 2νu`.
pub fn gegenbauer(n: u32, nu: &Rational) -> Result<Poly> {
    if *nu <= ratio(-1, 2) || nu.is_zero() {
        return Err(Error::InvalidParameter(format!(
            "Gegenbauer parameter must exceed -1/2 and be nonzero, got {nu}"
        )));
    }
    let mut prev = Poly::one();
    if n == 0 {
        return Ok(prev);
    }
    let mut cur = Poly::x().scale(&(nu * int(2)));
    for m in 2..=n {
        let m_r = int(m as i64);
        let a = (&m_r + nu - int(1)) * int(2);
        let b = &m_r + nu * int(2) - int(2);
        let next = (&(&Poly::x() * &cur).scale(&a) - &prev.scale(&b)).scale(&(Rational::one() / &m_r));
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `∫ p(λ, x) dγ(x)`: odd powers vanish, even `x^J` contribute
/// `coeff · (λ²)^{J/2} · (J-1)!!`.
pub fn integrate_gaussian(p: &GradedPoly) -> Rational {
    let mut acc = Rational::zero();
    let mut lam_pow = Rational::one();
    for (j, c) in p.coeffs.coeffs().iter().enumerate() {
        if j % 2 == 0 {
            if !c.is_zero() {
                acc += c * &lam_pow * Rational::from_integer(gaussian_moment_int(j as u32));
            }
            lam_pow *= &p.lambda_sq;
        }
    }
    acc
}

/// `∫ g(λx) q(x) dγ(x)` for a graded `g` of definite parity and an
/// unscaled `q`. The result is `R · λ^ε`, `ε` the parity of `g`.
pub fn integrate_gaussian_mixed(g: &GradedPoly, q: &Poly) -> LambdaScaled {
    let eps = g.parity().unwrap_or(0) as u32;
    let mut acc = Rational::zero();
    for (j, c) in g.coeffs.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        // λ^j = λ^ε (λ²)^{(j-ε)/2}
        let lam = num_traits::pow(g.lambda_sq.clone(), (j - eps as usize) / 2);
        let cl = c * lam;
        for (b, h) in q.coeffs().iter().enumerate() {
            if !h.is_zero() && (j + b) % 2 == 0 {
                acc += &cl * h * Rational::from_integer(gaussian_moment_int((j + b) as u32));
            }
        }
    }
    LambdaScaled {
        coeff: acc,
        lambda_power: eps,
    }
}

/// `∫_0^∞ p(x) e^{-x} x^ν dx = Σ_j coeff_j (j+ν)!` for integer `ν ≥ 0`.
pub fn integrate_exponential(p: &Poly, nu: u32) -> Rational {
    let mut acc = Rational::zero();
    let mut fact = factorial_int(nu);
    for (j, c) in p.coeffs().iter().enumerate() {
        if j > 0 {
            fact *= (j as u32 + nu) as u64;
        }
        if !c.is_zero() {
            acc += c * Rational::from_integer(fact.clone());
        }
    }
    acc
}

/// One term `coeff · λ^{half_power} · H_a(x)` of the expansion of `H_n(λx)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaleTerm {
    pub a: u32,
    pub coeff: Rational,
    pub half_power: u32,
}

/// Expansion `H_n(λx) = Σ_a binom(n,a) λ^a (1-λ²)^{(n-a)/2} H_{n-a}(0) H_a(x)`.
///
/// Terms with `n - a` odd vanish. Even powers of `λ` are folded into
/// `coeff`; `half_power` is the leftover `a mod 2`.
pub fn hermite_scale_expansion(n: u32, lambda_sq: &Rational) -> Result<Vec<ScaleTerm>> {
    if *lambda_sq <= Rational::zero() || *lambda_sq >= Rational::one() {
        return Err(Error::InvalidParameter(format!(
            "λ² must lie in (0, 1), got {lambda_sq}"
        )));
    }
    let comp = Rational::one() - lambda_sq;
    let mut out = Vec::new();
    for a in (0..=n).rev() {
        if (n - a) % 2 == 1 {
            continue;
        }
        let c = binomial(n as i64, a as i64)
            * num_traits::pow(lambda_sq.clone(), (a / 2) as usize)
            * num_traits::pow(comp.clone(), ((n - a) / 2) as usize)
            * hermite_at_zero(n - a);
        out.push(ScaleTerm {
            a,
            coeff: c,
            half_power: a % 2,
        });
    }
    out.reverse();
    Ok(out)
}

/// `H_n(x)` in floating point by the three-term recurrence.
pub fn hermite_f64(n: u32, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, x);
    if n == 0 {
        return prev;
    }
    for k in 1..n {
        let next = x * cur - k as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `L_n^{(ν)}(x)` in floating point,
/// `(n+1) L_{n+1} = (2n+1+ν-x) L_n - (n+ν) L_{n-1}`.
pub fn laguerre_f64(n: u32, nu: f64, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, 1.0 + nu - x);
    if n == 0 {
        return prev;
    }
    for k in 1..n {
        let k = k as f64;
        let next = ((2.0 * k + 1.0 + nu - x) * cur - (k + nu) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `C_n^ν(u)` in floating point.
pub fn gegenbauer_f64(n: u32, nu: f64, u: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, 2.0 * nu * u);
    if n == 0 {
        return prev;
    }
    for m in 2..=n {
        let m = m as f64;
        let next = (2.0 * u * (m + nu - 1.0) * cur - (m + 2.0 * nu - 2.0) * prev) / m;
        prev = cur;
        cur = next;
    }
    cur
}

/// `Γ(n+2ν)/(Γ(2ν) n!) = (2ν)_n / n!`, exact.
pub fn gegenbauer_at_one(n: u32, nu: &Rational) -> Rational {
    crate::exactnum::pochhammer(&(nu * int(2)), n) / factorial(n)
}

/// Serializes coefficients as `"num/den"` strings (integers as `"n"`).
pub fn poly_to_strings(p: &Poly) -> Vec<String> {
    p.coeffs().iter().map(|c| c.to_string()).collect()
}
