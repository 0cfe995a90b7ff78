//! Sparse multivariate polynomials over ℚ, used to certify polynomial
//! identities (kernel expansions, Laguerre addition formulas) coefficient
//! by coefficient.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::exactnum::Rational;
use crate::orthopoly::Poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        MultiPoly::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = MultiPoly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// Embeds a univariate polynomial as a polynomial in variable `var`.
    pub fn from_univariate(nvars: usize, var: usize, p: &Poly) -> Self {
        let mut out = MultiPoly::zero(nvars);
        for (j, c) in p.coeffs().iter().enumerate() {
            let mut e = vec![0; nvars];
            e[var] = j as u32;
            out.add_term(e, c.clone());
        }
        out
    }

    /// `p(x_{v_1} + ... + x_{v_r})`.
    pub fn from_univariate_sum(nvars: usize, vars: &[usize], p: &Poly) -> Self {
        let mut sum = MultiPoly::zero(nvars);
        for &v in vars {
            sum = &sum + &MultiPoly::from_univariate(nvars, v, &Poly::x());
        }
        let mut out = MultiPoly::zero(nvars);
        let mut pow = MultiPoly::one(nvars);
        for c in p.coeffs() {
            out = &out + &pow.scale(c);
            pow = &pow * &sum;
        }
        out
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        debug_assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        let cancelled = {
            let slot = self.terms.entry(exps.clone()).or_insert_with(Rational::zero);
            *slot += c;
            slot.is_zero()
        };
        if cancelled {
            self.terms.remove(&exps);
        }
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Multiplies every monomial's coefficient by `f(exponents)`.
    pub fn map_coeffs(&self, f: impl Fn(&[u32], &Rational) -> Rational) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), f(k, v));
        }
        out
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.iter().sum()).max()
    }
}

impl std::ops::Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        debug_assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            let slot = out.terms.entry(k.clone()).or_insert_with(Rational::zero);
            *slot += v;
        }
        out.terms.retain(|_, v| !v.is_zero());
        out
    }
}

impl std::ops::Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self + &rhs.scale(&-Rational::one())
    }
}

impl std::ops::Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        debug_assert_eq!(self.nvars, rhs.nvars);
        let mut terms: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
        for (ka, va) in &self.terms {
            for (kb, vb) in &rhs.terms {
                let k: Vec<u32> = ka.iter().zip(kb).map(|(a, b)| a + b).collect();
                *terms.entry(k).or_insert_with(Rational::zero) += va * vb;
            }
        }
        terms.retain(|_, v| !v.is_zero());
        MultiPoly {
            nvars: self.nvars,
            terms,
        }
    }
}
