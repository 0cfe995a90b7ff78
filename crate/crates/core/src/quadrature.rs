//! Gauss-type quadrature rules built by the Golub–Welsch method: the nodes
//! are the eigenvalues of the Jacobi matrix of the three-term recurrence,
//! and each weight is the total mass times the squared first component of
//! the matching unit eigenvector.

use crate::eigen::tridiagonal_eigen;
use crate::error::{Error, Result};

/// Weight measure a rule integrates against.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RuleKind {
    /// Standard Gaussian probability measure `dγ(x) = (2π)^{-1/2} e^{-x²/2} dx`.
    HermiteGamma,
    /// `x^ν e^{-x} dx` on `(0, ∞)`.
    Laguerre { nu: f64 },
    /// `(1-u)^α (1+u)^β du` on `(-1, 1)`.
    Jacobi { alpha: f64, beta: f64 },
}

impl RuleKind {
    pub fn legendre() -> Self {
        RuleKind::Jacobi {
            alpha: 0.0,
            beta: 0.0,
        }
    }

    /// Total mass of the weight measure.
    pub fn mass(&self) -> f64 {
        match *self {
            RuleKind::HermiteGamma => 1.0,
            RuleKind::Laguerre { nu } => libm::tgamma(nu + 1.0),
            RuleKind::Jacobi { alpha, beta } => {
                let ab = alpha + beta;
                (2f64).powf(ab + 1.0)
                    * (libm::lgamma(alpha + 1.0) + libm::lgamma(beta + 1.0) - libm::lgamma(ab + 2.0))
                        .exp()
            }
        }
    }

    fn is_symmetric(&self) -> bool {
        match *self {
            RuleKind::HermiteGamma => true,
            RuleKind::Laguerre { .. } => false,
            RuleKind::Jacobi { alpha, beta } => alpha == beta,
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = match *self {
            RuleKind::HermiteGamma => false,
            RuleKind::Laguerre { nu } => !(nu > -1.0),
            RuleKind::Jacobi { alpha, beta } => !(alpha > -1.0 && beta > -1.0),
        };
        if bad {
            return Err(Error::InvalidParameter(format!(
                "weight parameters out of range: {self:?}"
            )));
        }
        Ok(())
    }

    /// Diagonal and off-diagonal of the `n×n` Jacobi matrix.
    fn jacobi_matrix(&self, n: usize) -> (Vec<f64>, Vec<f64>) {
        match *self {
            RuleKind::HermiteGamma => (vec![0.0; n], (1..n).map(|k| (k as f64).sqrt()).collect()),
            RuleKind::Laguerre { nu } => (
                (0..n).map(|k| 2.0 * k as f64 + nu + 1.0).collect(),
                (1..n).map(|k| (k as f64 * (k as f64 + nu)).sqrt()).collect(),
            ),
            RuleKind::Jacobi { alpha: a, beta: b } => {
                let ab = a + b;
                let diag = (0..n)
                    .map(|k| {
                        let k = k as f64;
                        if k == 0.0 {
                            (b - a) / (ab + 2.0)
                        } else {
                            (b * b - a * a) / ((2.0 * k + ab) * (2.0 * k + ab + 2.0))
                        }
                    })
                    .collect();
                let off = (1..n)
                    .map(|k| {
                        let k = k as f64;
                        let s = 2.0 * k + ab;
                        let v = if k == 1.0 {
                            // (1+α+β) cancels; the general form is 0/0 when α+β = -1
                            4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab).powi(2) * (3.0 + ab))
                        } else {
                            4.0 * k * (k + a) * (k + b) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0))
                        };
                        v.sqrt()
                    })
                    .collect();
                (diag, off)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuadRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub kind: RuleKind,
}

/// `n`-point Gauss rule for `kind`, exact on polynomials of degree `≤ 2n-1`.
pub fn gauss_rule(kind: RuleKind, n: usize) -> Result<QuadRule> {
    if n == 0 {
        return Err(Error::InvalidParameter("a Gauss rule needs at least one node".into()));
    }
    kind.validate()?;
    let (diag, off) = kind.jacobi_matrix(n);
    let (mut nodes, first) = tridiagonal_eigen(&diag, &off)?;
    let mass = kind.mass();
    let mut weights: Vec<f64> = first.iter().map(|v| mass * v * v).collect();
    if kind.is_symmetric() {
        // Enforce the exact reflection symmetry so odd moments vanish to rounding.
        for i in 0..n / 2 {
            let j = n - 1 - i;
            let x = 0.5 * (nodes[j] - nodes[i]);
            let w = 0.5 * (weights[i] + weights[j]);
            nodes[i] = -x;
            nodes[j] = x;
            weights[i] = w;
            weights[j] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
    }
    Ok(QuadRule {
        nodes,
        weights,
        kind,
    })
}

impl QuadRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Affine image of a Legendre rule on `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
        let h = 0.5 * (b - a);
        let m = 0.5 * (a + b);
        (
            self.nodes.iter().map(|x| m + h * x).collect(),
            self.weights.iter().map(|w| h * w).collect(),
        )
    }
}

/// `Σ w_i f(x_i)`, failing on the first non-finite integrand value.
pub fn integrate(rule: &QuadRule, mut f: impl FnMut(f64) -> f64) -> Result<f64> {
    let mut acc = 0.0;
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        let v = f(x);
        if !v.is_finite() {
            return Err(Error::NonFinite { node: x });
        }
        acc += w * v;
    }
    Ok(acc)
}

/// Smallest comfortable node count for a polynomial integrand of degree `degree`.
pub fn nodes_for_degree(degree: usize) -> usize {
    (degree + 2) / 2 + 2
}

/// Integrates a non-polynomial `f`, starting at 200 nodes and doubling until
/// two successive values differ by less than `tol` (relative). Gives up at
/// 1600 nodes with a [`Error::GridResolution`].
pub fn integrate_converged(kind: RuleKind, mut f: impl FnMut(f64) -> f64, tol: f64) -> Result<f64> {
    let mut n = 200;
    let mut prev = integrate(&gauss_rule(kind, n)?, &mut f)?;
    while n < 1600 {
        n *= 2;
        let cur = integrate(&gauss_rule(kind, n)?, &mut f)?;
        if (cur - prev).abs() <= tol * cur.abs().max(f64::MIN_POSITIVE) {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::GridResolution(format!(
        "quadrature did not settle below {tol:e} with {n} nodes"
    )))
}

/// Composite Gauss–Legendre on `[a, b]` split into `panels` equal panels of
/// `order` nodes each.
pub fn composite_legendre(a: f64, b: f64, panels: usize, order: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if panels == 0 || !(b > a) {
        return Err(Error::InvalidParameter(format!(
            "composite rule needs b > a and panels > 0 (got [{a}, {b}], {panels})"
        )));
    }
    let base = gauss_rule(RuleKind::legendre(), order)?;
    let h = (b - a) / panels as f64;
    let mut xs = Vec::with_capacity(panels * order);
    let mut ws = Vec::with_capacity(panels * order);
    for p in 0..panels {
        let lo = a + p as f64 * h;
        let (x, w) = base.mapped(lo, lo + h);
        xs.extend(x);
        ws.extend(w);
    }
    Ok((xs, ws))
}
