//! Finite expansions in Hermite functions `Φ_m`, radial Laguerre functions
//! `Ψ_n`, or the bare polynomials `H_m`, `L_n`.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::orthopoly::{hermite_f64, laguerre_f64};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    /// `Φ_m(x) = H_m(√(4π) x) e^{-π‖x‖²}` on `ℝ^d`.
    HermitePhi,
    /// `Ψ_n(x) = L_n^{(ν)}(2π‖x‖²) e^{-π‖x‖²}`, `ν = d/2 - 1`.
    LaguerrePsi,
    /// `H_m(x)`, for functions in `L²(dγ_d)`.
    HermiteH,
    /// `L_n^{(ν)}(x)`.
    LaguerreL,
}

impl Basis {
    pub fn is_hermite(&self) -> bool {
        matches!(self, Basis::HermitePhi | Basis::HermiteH)
    }
}

/// `Σ c · (basis element)`. Hermite indices are multi-indices of length
/// `dim`; Laguerre indices are single degrees stored as `vec![n]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModeExpansion {
    pub basis: Basis,
    pub dim: usize,
    pub terms: Vec<(Vec<u32>, Complex64)>,
}

impl ModeExpansion {
    pub fn new(basis: Basis, dim: usize) -> Self {
        ModeExpansion {
            basis,
            dim,
            terms: Vec::new(),
        }
    }

    pub fn with_term(mut self, index: Vec<u32>, c: Complex64) -> Self {
        self.push(index, c);
        self
    }

    pub fn push(&mut self, index: Vec<u32>, c: Complex64) {
        if self.basis.is_hermite() {
            assert_eq!(index.len(), self.dim, "multi-index length must equal the dimension");
        } else {
            assert_eq!(index.len(), 1, "Laguerre terms carry a single degree");
        }
        if let Some(slot) = self.terms.iter_mut().find(|(i, _)| *i == index) {
            slot.1 += c;
        } else {
            self.terms.push((index, c));
        }
    }

    /// Largest total degree in the support.
    pub fn max_degree(&self) -> u32 {
        self.terms.iter().map(|(i, _)| i.iter().sum::<u32>()).max().unwrap_or(0)
    }

    /// Same coefficients on another basis (for example `Φ_m ↔ H_m`).
    pub fn rebased(&self, basis: Basis) -> ModeExpansion {
        ModeExpansion {
            basis,
            dim: self.dim,
            terms: self.terms.clone(),
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&[u32], Complex64) -> Complex64) -> ModeExpansion {
        ModeExpansion {
            basis: self.basis,
            dim: self.dim,
            terms: self.terms.iter().map(|(i, c)| (i.clone(), f(i, *c))).collect(),
        }
    }

    /// Point value. Laguerre bases take the radius (or, for `LaguerreL`,
    /// the variable) as `x[0]`.
    pub fn eval(&self, x: &[f64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(idx, c)| c * basis_value(self.basis, self.dim, idx, x))
            .sum()
    }
}

/// Value of a single basis element.
pub fn basis_value(basis: Basis, dim: usize, idx: &[u32], x: &[f64]) -> f64 {
    let nu = dim as f64 / 2.0 - 1.0;
    match basis {
        Basis::HermiteH => idx.iter().zip(x).map(|(&m, &xi)| hermite_f64(m, xi)).product(),
        Basis::HermitePhi => phi(idx, x),
        Basis::LaguerrePsi => psi(idx[0], nu, x[0]),
        Basis::LaguerreL => laguerre_f64(idx[0], nu, x[0]),
    }
}

/// `Φ_m(x)`.
pub fn phi(m: &[u32], x: &[f64]) -> f64 {
    let s = (4.0 * PI).sqrt();
    let r2: f64 = x.iter().map(|v| v * v).sum();
    m.iter().zip(x).map(|(&mi, &xi)| hermite_f64(mi, s * xi)).product::<f64>() * (-PI * r2).exp()
}

/// `Ψ_n` at radius `r`.
pub fn psi(n: u32, nu: f64, r: f64) -> f64 {
    laguerre_f64(n, nu, 2.0 * PI * r * r) * (-PI * r * r).exp()
}
