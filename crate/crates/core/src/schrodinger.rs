//! Free Schrödinger evolution `i∂_t u + Δu = 0` for Hermite and Laguerre
//! modes: closed-form flows, an independent Fourier-multiplier propagator,
//! mixed space-time norms and the sharp Gaussian constants.
//!
//! The Fourier transform is `f̂(y) = ∫ f(x) e^{-2πi x·y} dx`, under which
//! the flow acts as the multiplier `e^{-4π²it‖y‖²}`.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactnum::{factorial, to_f64};
use crate::modes::{phi, psi, Basis, ModeExpansion};
use crate::orthopoly::hermite_f64;
use crate::quadrature::{composite_legendre, gauss_rule, nodes_for_degree, QuadRule, RuleKind};
use crate::special::{bessel_lambda, sphere_area};

/// `C(p, d) = (p^{-1/(2p)} 2^{1/p - 1/4})^d`, the Gaussian value of the
/// Strichartz quotient.
pub fn sharp_constant(p: f64, d: usize) -> f64 {
    (p.powf(-1.0 / (2.0 * p)) * 2f64.powf(1.0 / p - 0.25)).powi(d as i32)
}

/// `(p^{-1/(2p)} 2^{1/p - 1/2})^d`, the scale relating the space-time norm
/// to the Gaussian-measure functional.
pub fn equivalence_scale(p: f64, d: usize) -> f64 {
    (p.powf(-1.0 / (2.0 * p)) * 2f64.powf(1.0 / p - 0.5)).powi(d as i32)
}

/// Requires `2 ≤ p, q < ∞` and `d/p + 2/q = d/2`.
pub fn check_admissible(p: f64, q: f64, d: usize) -> Result<()> {
    let ok = p.is_finite()
        && q.is_finite()
        && p >= 2.0
        && q >= 2.0
        && (d as f64 / p + 2.0 / q - d as f64 / 2.0).abs() < 1e-12;
    if ok {
        Ok(())
    } else {
        Err(Error::NotAdmissible { p, q, d })
    }
}

fn chirp_parts(t: f64, x_sq: f64) -> (Complex64, f64, Complex64) {
    let a = Complex64::new(1.0, 4.0 * PI * t);
    let sigma_sq = 1.0 + 16.0 * PI * PI * t * t;
    let phase = Complex64::from_polar(1.0, 4.0 * PI * PI * t * x_sq / sigma_sq);
    (a, sigma_sq, phase)
}

/// `e^{itΔ}Φ_m(x) = (1+4πit)^{-d/2} (√((1-4πit)/(1+4πit)))^{|m|} Φ_m(x/σ) e^{4π²it‖x‖²/σ²}`
/// with `σ² = 1 + 16π²t²`, principal branches throughout.
pub fn evolve_phi(m: &[u32], t: f64, x: &[f64]) -> Complex64 {
    let d = x.len() as f64;
    let x_sq: f64 = x.iter().map(|v| v * v).sum();
    let (a, sigma_sq, phase) = chirp_parts(t, x_sq);
    let sigma = sigma_sq.sqrt();
    let ratio = (a.conj() / a).sqrt();
    let scaled: Vec<f64> = x.iter().map(|v| v / sigma).collect();
    a.powf(-d / 2.0) * ratio.powu(m.iter().sum()) * phi(m, &scaled) * phase
}

/// `e^{itΔ}Ψ_n` at radius `r` in `ℝ^d`: as for `evolve_phi`, with the
/// factor `((1-4πit)/(1+4πit))^n` and no square root.
pub fn evolve_psi(n: u32, t: f64, r: f64, d: usize) -> Complex64 {
    let (a, sigma_sq, phase) = chirp_parts(t, r * r);
    let nu = d as f64 / 2.0 - 1.0;
    a.powf(-(d as f64) / 2.0) * (a.conj() / a).powu(n) * psi(n, nu, r / sigma_sq.sqrt()) * phase
}

/// `e^{itΔ} e^{-πB‖x‖²} = (1+4πitB)^{-d/2} exp(-πB‖x‖²/(1+4πitB))`, `Re B > 0`.
pub fn evolve_gaussian(b: Complex64, t: f64, x: &[f64]) -> Complex64 {
    let d = x.len() as f64;
    let x_sq: f64 = x.iter().map(|v| v * v).sum();
    let den = Complex64::new(1.0, 0.0) + Complex64::new(0.0, 4.0 * PI * t) * b;
    den.powf(-d / 2.0) * (-PI * b * x_sq / den).exp()
}

/// Closed-form evolution of a `Φ` or `Ψ` expansion at a point of `ℝ^d`.
pub fn evolve_expansion(f: &ModeExpansion, t: f64, x: &[f64]) -> Result<Complex64> {
    match f.basis {
        Basis::HermitePhi => Ok(f.terms.iter().map(|(m, c)| c * evolve_phi(m, t, x)).sum()),
        Basis::LaguerrePsi => {
            let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            Ok(f.terms.iter().map(|(n, c)| c * evolve_psi(n[0], t, r, f.dim)).sum())
        }
        _ => Err(Error::InvalidParameter("flows are defined for Φ and Ψ expansions".into())),
    }
}

/// `‖Ψ_n‖²_{L²(ℝ^d)} = ½ (2π)^{-d/2} |S^{d-1}| Γ(n+ν+1)/n!`.
pub fn psi_norm_sq(n: u32, d: usize) -> f64 {
    let nu = d as f64 / 2.0 - 1.0;
    let ratio = (libm::lgamma(n as f64 + nu + 1.0) - libm::lgamma(n as f64 + 1.0)).exp();
    0.5 * (2.0 * PI).powf(-(d as f64) / 2.0) * sphere_area(d) * ratio
}

/// `‖f‖_{L²(ℝ^d)}` from orthogonality of the basis.
pub fn l2_norm(f: &ModeExpansion) -> Result<f64> {
    match f.basis {
        Basis::HermitePhi => {
            let s: f64 = f.terms.iter().map(|(m, c)| c.norm_sqr() * mode_factorial(m)).sum();
            Ok((2f64.powf(-(f.dim as f64) / 2.0) * s).sqrt())
        }
        Basis::LaguerrePsi => Ok(f.terms.iter().map(|(n, c)| c.norm_sqr() * psi_norm_sq(n[0], f.dim)).sum::<f64>().sqrt()),
        _ => Err(Error::InvalidParameter("L² norm is defined here for Φ and Ψ expansions".into())),
    }
}

fn mode_factorial(m: &[u32]) -> f64 {
    m.iter().map(|&v| to_f64(&factorial(v))).product()
}

/// Node counts for the space-time quadrature. Space uses a Gauss rule
/// matched to the Gaussian decay of the evolved profile; time uses the
/// midpoint rule in the variable `s` with `t = -tan(πs)/(4π)`, in which the
/// integrand is 1-periodic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpaceTimeGrid {
    pub space_nodes: usize,
    pub time_nodes: usize,
}

impl SpaceTimeGrid {
    /// Smallest grid on which even `p` and `q/p ∈ ℕ` make both quadratures
    /// exact: `|u|^p` is then a polynomial of degree `p·deg` per variable
    /// and the time integrand a trigonometric polynomial of frequency at
    /// most `q·deg/2`.
    pub fn minimal(f: &ModeExpansion, p: f64, q: f64) -> SpaceTimeGrid {
        let deg = f.max_degree() as usize;
        let pc = p.ceil() as usize;
        let qc = q.ceil() as usize;
        SpaceTimeGrid {
            space_nodes: nodes_for_degree(pc * deg),
            time_nodes: qc * deg / 2 + 2,
        }
    }

    /// `minimal` with some slack, the default for checks.
    pub fn for_expansion(f: &ModeExpansion, p: f64, q: f64) -> SpaceTimeGrid {
        let m = SpaceTimeGrid::minimal(f, p, q);
        SpaceTimeGrid {
            space_nodes: m.space_nodes + 4,
            time_nodes: 2 * m.time_nodes + 8,
        }
    }

    fn validate(&self, f: &ModeExpansion, p: f64, q: f64) -> Result<()> {
        let m = SpaceTimeGrid::minimal(f, p, q);
        if self.space_nodes < m.space_nodes || self.time_nodes < m.time_nodes {
            return Err(Error::GridResolution(format!(
                "need at least {} space and {} time nodes, got {} and {}",
                m.space_nodes, m.time_nodes, self.space_nodes, self.time_nodes
            )));
        }
        Ok(())
    }
}

/// Midpoint nodes `s_j = -1/2 + (j + 1/2)/n` with the corresponding times.
fn time_samples(n: usize) -> impl Iterator<Item = (f64, f64)> {
    (0..n).map(move |j| {
        let s = -0.5 + (j as f64 + 0.5) / n as f64;
        (s, -(PI * s).tan() / (4.0 * PI))
    })
}

/// Tensor-product nodes of a one-dimensional rule in `d` dimensions.
fn tensor(rule: &QuadRule, d: usize) -> Vec<(Vec<f64>, f64)> {
    let mut out = vec![(Vec::with_capacity(d), 1.0)];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|(pt, w)| {
                rule.nodes.iter().zip(&rule.weights).map(move |(&x, &wx)| {
                    let mut p = pt.clone();
                    p.push(x);
                    (p, w * wx)
                })
            })
            .collect();
    }
    out
}

/// `‖e^{itΔ}f‖_{L^q_t L^p_x}` from the closed-form flows.
///
/// With `x = σz`, `σ² = 1+16π²t²`, the inner integral equals
/// `σ^{-2}` times a function of `s` (for admissible `p, q`), and
/// `dt = σ² ds/4` under `t = -tan(πs)/(4π)`; so the time integral becomes
/// an average over `s ∈ (-1/2, 1/2)`. Space is integrated against
/// `e^{-pπ‖z‖²}` by a Gauss–Hermite rule (Cartesian) or Gauss–Laguerre rule
/// in `v = pπρ²` (radial), evaluating the flow at physical points.
pub fn spacetime_norm_numeric(f: &ModeExpansion, p: f64, q: f64, grid: &SpaceTimeGrid) -> Result<f64> {
    let d = f.dim;
    check_admissible(p, q, d)?;
    grid.validate(f, p, q)?;
    let mut total = 0.0;
    match f.basis {
        Basis::HermitePhi => {
            let rule = gauss_rule(RuleKind::HermiteGamma, grid.space_nodes)?;
            let nodes = tensor(&rule, d);
            let to_z = (2.0 * p * PI).sqrt().recip();
            for (_, t) in time_samples(grid.time_nodes) {
                let sigma = (1.0 + 16.0 * PI * PI * t * t).sqrt();
                let mut inner = 0.0;
                for (y, w) in &nodes {
                    let z: Vec<f64> = y.iter().map(|v| v * to_z).collect();
                    let z_sq: f64 = z.iter().map(|v| v * v).sum();
                    let x: Vec<f64> = z.iter().map(|v| v * sigma).collect();
                    let u: Complex64 = f.terms.iter().map(|(m, c)| c * evolve_phi(m, t, &x)).sum();
                    inner += w * u.norm().powf(p) * (p * PI * z_sq).exp();
                }
                inner *= p.powf(-(d as f64) / 2.0) * sigma.powi(d as i32);
                total += inner.powf(q / p) * sigma * sigma / 4.0;
            }
        }
        Basis::LaguerrePsi => {
            let nu = d as f64 / 2.0 - 1.0;
            let rule = gauss_rule(RuleKind::Laguerre { nu }, grid.space_nodes)?;
            let area = sphere_area(d);
            for (_, t) in time_samples(grid.time_nodes) {
                let sigma = (1.0 + 16.0 * PI * PI * t * t).sqrt();
                let mut inner = 0.0;
                for (&v, &w) in rule.nodes.iter().zip(&rule.weights) {
                    let r = sigma * (v / (p * PI)).sqrt();
                    let u: Complex64 = f.terms.iter().map(|(n, c)| c * evolve_psi(n[0], t, r, d)).sum();
                    inner += w * u.norm().powf(p) * v.exp();
                }
                inner *= 0.5 * (p * PI).powf(-(d as f64) / 2.0) * area * sigma.powi(d as i32);
                total += inner.powf(q / p) * sigma * sigma / 4.0;
            }
        }
        _ => return Err(Error::InvalidParameter("space-time norms take Φ or Ψ expansions".into())),
    }
    Ok((total / grid.time_nodes as f64).powf(1.0 / q))
}

/// `‖e^{itΔ} e^{-πB‖x‖²}‖_{L^q_t L^p_x}` for `Re B > 0`. The spatial integral
/// uses a Gauss–Hermite rule matched to the Gaussian width at each time;
/// the `s`-integrand is smooth and periodic, so the midpoint rule converges
/// geometrically.
pub fn spacetime_norm_gaussian(b: Complex64, p: f64, q: f64, d: usize, space_nodes: usize, time_nodes: usize) -> Result<f64> {
    check_admissible(p, q, d)?;
    if b.re <= 0.0 {
        return Err(Error::InvalidParameter(format!("need Re B > 0, got {b}")));
    }
    let rule = gauss_rule(RuleKind::HermiteGamma, space_nodes)?;
    let nodes = tensor(&rule, d);
    let mut total = 0.0;
    for (_, t) in time_samples(time_nodes) {
        let den = Complex64::new(1.0, 0.0) + Complex64::new(0.0, 4.0 * PI * t) * b;
        let beta = (b / den).re;
        let to_x = (2.0 * p * PI * beta).sqrt().recip();
        let mut inner = 0.0;
        for (y, w) in &nodes {
            let x: Vec<f64> = y.iter().map(|v| v * to_x).collect();
            let x_sq: f64 = x.iter().map(|v| v * v).sum();
            inner += w * evolve_gaussian(b, t, &x).norm().powf(p) * (p * PI * beta * x_sq).exp();
        }
        inner *= (p * beta).powf(-(d as f64) / 2.0);
        let sigma_sq = 1.0 + 16.0 * PI * PI * t * t;
        total += inner.powf(q / p) * sigma_sq / 4.0;
    }
    Ok((total / time_nodes as f64).powf(1.0 / q))
}

/// `‖e^{-πB‖x‖²}‖_{L²(ℝ^d)} = (2 Re B)^{-d/4}`.
pub fn gaussian_l2_norm(b: Complex64, d: usize) -> f64 {
    (2.0 * b.re).powf(-(d as f64) / 4.0)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EquivalenceCheck {
    /// `(∫_{-1/2}^{1/2} (∫ |𝓗^t T_{-i} g|^p dγ_d)^{q/p} dt)^{1/q}`.
    pub lhs: f64,
    /// `‖e^{itΔ}f‖_{L^q_t L^p_x} / (p^{-1/2p} 2^{1/p-1/2})^d`.
    pub rhs: f64,
    pub ratio: f64,
    /// `C(p,d)/(p^{-1/2p} 2^{1/p-1/2})^d · ‖f‖_{L²}`.
    pub norm_lhs: f64,
    /// `‖g‖_{L²(γ_d)}`.
    pub norm_rhs: f64,
}

/// Compares the Gaussian-measure functional of `g = Σ α(m) H_m` with the
/// Strichartz functional of `f = Σ α(m) Φ_m`. The left side sums the modes
/// `α(m)(-i)^{|m|} e^{2πi|m|t} H_m(λx)`, `λ = √(2/p)`, on a Gauss–Hermite
/// grid; the right side evaluates the closed-form flows at physical points.
pub fn equivalence_check_hermite(g: &ModeExpansion, p: f64, q: f64, grid: &SpaceTimeGrid) -> Result<EquivalenceCheck> {
    if g.basis != Basis::HermiteH {
        return Err(Error::InvalidParameter("expected an H_m expansion".into()));
    }
    let d = g.dim;
    check_admissible(p, q, d)?;
    grid.validate(g, p, q)?;
    let lambda = (2.0 / p).sqrt();
    let rule = gauss_rule(RuleKind::HermiteGamma, grid.space_nodes)?;
    let nodes = tensor(&rule, d);
    // Hermite values at the scaled nodes do not depend on t.
    let basis: Vec<Vec<f64>> = nodes
        .iter()
        .map(|(y, _)| {
            g.terms
                .iter()
                .map(|(m, _)| m.iter().zip(y).map(|(&mi, &yi)| hermite_f64(mi, lambda * yi)).product())
                .collect()
        })
        .collect();
    let minus_i = Complex64::new(0.0, -1.0);
    let mut total = 0.0;
    for j in 0..grid.time_nodes {
        let t = -0.5 + (j as f64 + 0.5) / grid.time_nodes as f64;
        let coeffs: Vec<Complex64> = g
            .terms
            .iter()
            .map(|(m, c)| {
                let deg: u32 = m.iter().sum();
                c * minus_i.powu(deg) * Complex64::from_polar(1.0, 2.0 * PI * deg as f64 * t)
            })
            .collect();
        let mut inner = 0.0;
        for ((_, w), hv) in nodes.iter().zip(&basis) {
            let u: Complex64 = coeffs.iter().zip(hv).map(|(c, h)| c * h).sum();
            inner += w * u.norm().powf(p);
        }
        total += inner.powf(q / p);
    }
    let lhs = (total / grid.time_nodes as f64).powf(1.0 / q);

    let f = g.rebased(Basis::HermitePhi);
    let scale = equivalence_scale(p, d);
    let rhs = spacetime_norm_numeric(&f, p, q, grid)? / scale;
    let (f_norm_sq, _) = parseval_check(&f)?;
    let norm_lhs = sharp_constant(p, d) / scale * f_norm_sq.sqrt();
    let norm_rhs = g.terms.iter().map(|(m, c)| c.norm_sqr() * mode_factorial(m)).sum::<f64>().sqrt();
    Ok(EquivalenceCheck {
        lhs,
        rhs,
        ratio: lhs / rhs,
        norm_lhs,
        norm_rhs,
    })
}

/// `(∫ |f|² dx, 2^{-d/2} Σ |α(m)|² m!)` for `f = Σ α(m) Φ_m`. The integral
/// uses composite Gauss–Legendre on `[-6, 6]^d`, independent of the
/// Gaussian weight.
pub fn parseval_check(f: &ModeExpansion) -> Result<(f64, f64)> {
    if f.basis != Basis::HermitePhi {
        return Err(Error::InvalidParameter("Parseval check takes a Φ expansion".into()));
    }
    let d = f.dim;
    if d == 0 || d > 3 {
        return Err(Error::InvalidParameter(format!("Parseval check supports 1 ≤ d ≤ 3, got {d}")));
    }
    let extent = 6.0 + (f.max_degree() as f64).sqrt();
    let panels = if d == 3 { 10 } else { 24 };
    let (xs, ws) = composite_legendre(-extent, extent, panels, 20)?;
    let rule = QuadRule {
        nodes: xs,
        weights: ws,
        kind: RuleKind::legendre(),
    };
    let lhs: f64 = tensor(&rule, d).iter().map(|(x, w)| w * f.eval(x).norm_sqr()).sum();
    let rhs = 2f64.powf(-(d as f64) / 2.0) * f.terms.iter().map(|(m, c)| c.norm_sqr() * mode_factorial(m)).sum::<f64>();
    Ok((lhs, rhs))
}

/// Domain of a sampled profile: the whole line, or radial profiles in `ℝ^d`
/// given by their values on `r ≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Geometry {
    Line,
    Radial { d: usize },
}

/// Resolution parameters of the quadrature propagator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PropagatorGrid {
    /// Input profiles are sampled on `[-X, X]` (or `[0, X]`).
    pub x_extent: f64,
    /// Frequencies are integrated over `[-Y, Y]` (or `[0, Y]`).
    pub y_extent: f64,
    pub order: usize,
    /// Largest phase change of the integrand allowed within one panel.
    pub max_panel_phase: f64,
    /// Largest relative magnitude allowed at the edge of either domain.
    pub edge_tol: f64,
}

impl Default for PropagatorGrid {
    fn default() -> Self {
        PropagatorGrid {
            x_extent: 6.0,
            y_extent: 5.0,
            order: 20,
            max_panel_phase: 8.0,
            edge_tol: 1e-12,
        }
    }
}

impl PropagatorGrid {
    fn panels(&self, length: f64, phase_rate: f64) -> usize {
        ((length * phase_rate / self.max_panel_phase).ceil() as usize).max(4)
    }

    fn domain(&self, geometry: Geometry, extent: f64) -> (f64, f64) {
        match geometry {
            Geometry::Line => (-extent, extent),
            Geometry::Radial { .. } => (0.0, extent),
        }
    }
}

/// A profile sampled on composite Gauss–Legendre nodes.
#[derive(Clone, Debug)]
pub struct SampledProfile {
    pub geometry: Geometry,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub values: Vec<Complex64>,
}

impl SampledProfile {
    /// Samples `f` on nodes fine enough for the forward transform up to the
    /// grid's frequency extent; fails if `f` has not decayed at the edge.
    pub fn sample(geometry: Geometry, grid: &PropagatorGrid, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        let (a, b) = grid.domain(geometry, grid.x_extent);
        let panels = grid.panels(b - a, 2.0 * PI * grid.y_extent);
        let (nodes, weights) = composite_legendre(a, b, panels, grid.order)?;
        let values: Vec<Complex64> = nodes.iter().map(|&x| f(x)).collect();
        let peak = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
        let edge = match geometry {
            Geometry::Line => f(a).norm().max(f(b).norm()),
            Geometry::Radial { .. } => f(b).norm(),
        };
        if edge > grid.edge_tol * peak {
            return Err(Error::GridResolution(format!(
                "profile is {:.3e} of its peak at the sampling edge {}",
                edge / peak,
                grid.x_extent
            )));
        }
        Ok(SampledProfile {
            geometry,
            nodes,
            weights,
            values,
        })
    }

    /// `∫ |f|²` over the domain, with the radial measure `|S^{d-1}| r^{d-1} dr`.
    pub fn mass(&self) -> f64 {
        let jac = jacobian(self.geometry);
        self.nodes
            .iter()
            .zip(&self.weights)
            .zip(&self.values)
            .map(|((&x, &w), v)| w * jac(x) * v.norm_sqr())
            .sum()
    }
}

fn jacobian(geometry: Geometry) -> Box<dyn Fn(f64) -> f64> {
    match geometry {
        Geometry::Line => Box::new(|_| 1.0),
        Geometry::Radial { d } => {
            let area = sphere_area(d);
            Box::new(move |r: f64| area * r.powi(d as i32 - 1))
        }
    }
}

/// `Σ w f(x) K(x, y)` for each target `y`: the Fourier kernel
/// `e^{sign·2πixy}` on the line, and the radial kernel
/// `2π (2π)^ν r^{2ν+1} Λ_ν(2πrρ)` (`Λ_ν(z) = J_ν(z)/z^ν`) otherwise.
fn transform(geometry: Geometry, nodes: &[f64], weights: &[f64], values: &[Complex64], targets: &[f64], sign: f64) -> Result<Vec<Complex64>> {
    match geometry {
        Geometry::Line => Ok(targets
            .iter()
            .map(|&y| {
                nodes
                    .iter()
                    .zip(weights)
                    .zip(values)
                    .map(|((&x, &w), v)| v * Complex64::from_polar(w, sign * 2.0 * PI * x * y))
                    .sum()
            })
            .collect()),
        Geometry::Radial { d } => {
            let nu = d as f64 / 2.0 - 1.0;
            let pre = 2.0 * PI * (2.0 * PI).powf(nu);
            let radial_w: Vec<f64> = nodes.iter().zip(weights).map(|(&r, &w)| pre * w * r.powf(2.0 * nu + 1.0)).collect();
            targets
                .iter()
                .map(|&rho| {
                    let mut acc = Complex64::zero();
                    for ((&r, &w), v) in nodes.iter().zip(&radial_w).zip(values) {
                        acc += v * (w * bessel_lambda(nu, 2.0 * PI * r * rho)?);
                    }
                    Ok(acc)
                })
                .collect()
        }
    }
}

/// `e^{itΔ}f` at `points` by direct quadrature: forward transform, the
/// multiplier `e^{-4π²it‖y‖²}`, inverse transform. The frequency panels are
/// sized so that the phase of the inverse integrand moves at most
/// `max_panel_phase` per panel; the spectrum must have decayed at the
/// frequency edge.
pub fn numeric_propagate(f: &SampledProfile, t: f64, grid: &PropagatorGrid, points: &[f64]) -> Result<Vec<Complex64>> {
    if matches!(f.geometry, Geometry::Radial { .. }) && points.iter().any(|&r| r < 0.0) {
        return Err(Error::InvalidParameter("radial profiles are evaluated at r ≥ 0".into()));
    }
    let max_x = points.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let (a, b) = grid.domain(f.geometry, grid.y_extent);
    let rate = 2.0 * PI * max_x + 8.0 * PI * PI * t.abs() * grid.y_extent;
    let panels = grid.panels(b - a, rate);
    let (ys, wy) = composite_legendre(a, b, panels, grid.order)?;

    let spectrum = transform(f.geometry, &f.nodes, &f.weights, &f.values, &ys, -1.0)?;
    let peak = spectrum.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let edge = transform(f.geometry, &f.nodes, &f.weights, &f.values, &[b], -1.0)?[0].norm();
    if edge > grid.edge_tol.max(1e-14) * peak.max(f64::MIN_POSITIVE) {
        return Err(Error::GridResolution(format!(
            "spectrum is {:.3e} of its peak at the frequency edge {}",
            edge / peak,
            grid.y_extent
        )));
    }
    let evolved: Vec<Complex64> = ys
        .iter()
        .zip(&spectrum)
        .map(|(&y, v)| v * Complex64::from_polar(1.0, -4.0 * PI * PI * t * y * y))
        .collect();
    transform(f.geometry, &ys, &wy, &evolved, points, 1.0)
}
