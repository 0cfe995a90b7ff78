//! The sphere operator `R(g)(ξ) = ∫_{S^{d-1}} g(ζ) ‖ξ-ζ‖^{2-d} dζ`, its
//! Funk–Hecke spectrum on zonal harmonics, and the weighted space-time
//! identity `∫∫ |e^{itΔ}f|² ‖x‖^{-2} dx dt ≤ π/(d-2) (‖f‖² - (2/d) Dist(f, Radial)²)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exactnum::{int, ratio, to_f64, Rational};
use crate::orthopoly::{gegenbauer, gegenbauer_at_one};
use crate::quadrature::{gauss_rule, nodes_for_degree, RuleKind};
use crate::schrodinger::{evolve_gaussian, evolve_phi, evolve_psi};
use crate::special::sphere_area;

/// `|S^{d-1}|` and `ν = d/2 - 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct SphereConstants {
    pub d: usize,
    pub surface_area: f64,
    pub nu: Rational,
}

impl SphereConstants {
    pub fn new(d: usize) -> Result<Self> {
        check_dimension(d)?;
        Ok(SphereConstants {
            d,
            surface_area: sphere_area(d),
            nu: ratio(d as i64, 2) - int(1),
        })
    }
}

fn check_dimension(d: usize) -> Result<()> {
    if d < 3 {
        return Err(Error::InvalidParameter(format!("the sphere operator needs d ≥ 3, got {d}")));
    }
    Ok(())
}

/// `g(ξ) = Σ_n c_n C_n^ν(ξ·η)/C_n^ν(1)` for a fixed pole `η`, so the
/// degree-`n` component takes the value `c_n` at the pole.
#[derive(Clone, Debug, PartialEq)]
pub struct ZonalExpansion {
    pub d: usize,
    pub coeffs: Vec<Complex64>,
}

impl ZonalExpansion {
    pub fn new(d: usize, coeffs: Vec<Complex64>) -> Result<Self> {
        check_dimension(d)?;
        Ok(ZonalExpansion { d, coeffs })
    }

    /// `‖Y_n‖²_{L²(S^{d-1})}` for each component.
    pub fn component_norms_sq(&self) -> Vec<f64> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c.norm_sqr() * zonal_norm_sq(n as u32, self.d))
            .collect()
    }
}

/// `‖C_n^ν(ξ·η)/C_n^ν(1)‖²_{L²(S^{d-1})} = |S^{d-1}| ν / ((n+ν) C_n^ν(1))`.
pub fn zonal_norm_sq(n: u32, d: usize) -> f64 {
    let nu = ratio(d as i64, 2) - int(1);
    let c1 = gegenbauer_at_one(n, &nu);
    let r = &nu / ((&nu + int(n as i64)) * c1);
    sphere_area(d) * to_f64(&r)
}

/// `(|S^{d-2}| / (2^ν C_n^ν(1))) ∫ C_n^ν(u) (1-u)^{-ν} (1-u²)^{ν-1/2} du`.
/// The weight `(1-u)^{-1/2}(1+u)^{ν-1/2}` absorbs the singular factors, so
/// a Gauss–Jacobi rule with `⌈(n+1)/2⌉` nodes is exact.
pub fn funk_hecke_eigenvalue_numeric(n: u32, d: usize) -> Result<f64> {
    let k = SphereConstants::new(d)?;
    let nu = to_f64(&k.nu);
    let c = gegenbauer(n, &k.nu)?;
    let rule = gauss_rule(
        RuleKind::Jacobi {
            alpha: -0.5,
            beta: nu - 0.5,
        },
        nodes_for_degree(n as usize) + 1,
    )?;
    let integral: f64 = rule.nodes.iter().zip(&rule.weights).map(|(&u, &w)| w * c.eval_f64(u)).sum();
    let c1 = to_f64(&gegenbauer_at_one(n, &k.nu));
    Ok(sphere_area(d - 1) / (2f64.powf(nu) * c1) * integral)
}

/// The eigenvalue `((d-2)/(2n+d-2)) |S^{d-1}|`, returned as the exact
/// rational factor and a flag marking it as a multiple of `|S^{d-1}|`.
pub fn funk_hecke_eigenvalue_closed(n: u32, d: usize) -> Result<(Rational, bool)> {
    check_dimension(d)?;
    Ok((ratio(d as i64 - 2, 2 * n as i64 + d as i64 - 2), true))
}

/// `|S^{d-1}| - λ_n ≥ (2/d)|S^{d-1}|` for all `1 ≤ n ≤ max_n`, in exact
/// arithmetic on the rational factors. Returns the smallest gap factor
/// and the degrees attaining it.
pub fn gap_identity(d: usize, max_n: u32) -> Result<(Rational, Vec<u32>)> {
    check_dimension(d)?;
    let sharp = ratio(2, d as i64);
    let mut best: Option<Rational> = None;
    let mut at = Vec::new();
    for n in 1..=max_n {
        let (lam, _) = funk_hecke_eigenvalue_closed(n, d)?;
        let gap = Rational::one() - lam;
        if gap < sharp {
            return Err(Error::Consistency(format!("gap {gap} below 2/d at n = {n}")));
        }
        match &best {
            Some(b) if gap > *b => {}
            Some(b) if gap == *b => at.push(n),
            _ => {
                best = Some(gap);
                at = vec![n];
            }
        }
    }
    best.map(|b| (b, at)).ok_or_else(|| Error::InvalidParameter("need max_n ≥ 1".into()))
}

/// `(1/C_n^ν(1)) ∫ C_n^ν(u) (1-u)^{-a} (1-u²)^{ν-1/2} du` by Gauss–Jacobi
/// with weight `(1-u)^{ν-1/2-a}(1+u)^{ν-1/2}`, against
/// `2^{2ν-a} Γ(ν+1/2) Γ(ν+1/2-a) Γ(n+a) / (Γ(a) Γ(2ν+n+1-a))`.
/// The ratio `Γ(n+a)/Γ(a)` is taken as the rising factorial `(a)_n`, which
/// stays finite at the poles of `Γ(a)`.
pub fn gegenbauer_moment_check(n: u32, nu: &Rational, a: &Rational) -> Result<(f64, f64)> {
    let half = ratio(1, 2);
    if *nu <= -half.clone() || *a >= &half + nu {
        return Err(Error::InvalidParameter(format!("need ν > -1/2 and a < ν + 1/2, got ν = {nu}, a = {a}")));
    }
    let c = gegenbauer(n, nu)?;
    let nuf = to_f64(nu);
    let af = to_f64(a);
    let rule = gauss_rule(
        RuleKind::Jacobi {
            alpha: nuf - 0.5 - af,
            beta: nuf - 0.5,
        },
        nodes_for_degree(n as usize) + 1,
    )?;
    let c1 = to_f64(&gegenbauer_at_one(n, nu));
    let lhs: f64 = rule.nodes.iter().zip(&rule.weights).map(|(&u, &w)| w * c.eval_f64(u)).sum::<f64>() / c1;
    let rising: f64 = (0..n).map(|k| af + k as f64).product();
    let log_rest = libm::lgamma(nuf + 0.5) + libm::lgamma(nuf + 0.5 - af) - libm::lgamma(2.0 * nuf + n as f64 + 1.0 - af);
    let rhs = 2f64.powf(2.0 * nuf - af) * rising * log_rest.exp();
    Ok((lhs, rhs))
}

/// `(⟨g, Rg⟩, |S^{d-1}|(‖g‖² - (2/d) Dist(g, Const)²), Dist(g, Const)²)`.
pub fn weighted_form(g: &ZonalExpansion) -> Result<(f64, f64, f64)> {
    let norms = g.component_norms_sq();
    let area = sphere_area(g.d);
    let mut form = 0.0;
    for (n, y) in norms.iter().enumerate() {
        let (lam, _) = funk_hecke_eigenvalue_closed(n as u32, g.d)?;
        form += to_f64(&lam) * y;
    }
    let total: f64 = norms.iter().sum();
    let dist2: f64 = norms.iter().skip(1).sum();
    let bound = area * (total - 2.0 / g.d as f64 * dist2);
    Ok((area * form, bound, dist2))
}

/// Initial data for the weighted space-time check.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum WeightedProfile {
    /// `e^{-πB‖x‖²}`, `Re B > 0`.
    Gaussian(Complex64),
    /// `Φ_0 + ε Φ_{e_1}`: a radial Gaussian plus a degree-one component.
    Dipole(f64),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeightedCheck {
    /// `∫∫ |e^{itΔ}f|² ‖x‖^{-2} dx dt`.
    pub lhs: f64,
    /// `π/(d-2) ‖f‖²`.
    pub rhs: f64,
    /// `π/(d-2) (‖f‖² - (2/d) Dist(f, Radial)²)`.
    pub bound: f64,
    pub dist2: f64,
}

/// Number of nodes used by `weighted_spacetime_check` in each variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeightedGrid {
    pub radial_nodes: usize,
    pub angular_nodes: usize,
    pub time_nodes: usize,
}

impl Default for WeightedGrid {
    fn default() -> Self {
        WeightedGrid {
            radial_nodes: 16,
            angular_nodes: 4,
            time_nodes: 600,
        }
    }
}

/// Evaluates the weighted space-time integral from the closed-form flows.
///
/// Time uses `t = -tan(πs)/(4π)` and the midpoint rule in `s`. At each
/// time the evolved profile is a polynomial times `e^{-2πβ‖x‖²}` with
/// `β = Re(B/(1+4πitB))`, so space uses a generalized Gauss–Laguerre rule
/// in `v = 2πβr²` (weight `v^{d/2-2}e^{-v}` absorbs `r^{d-3}dr`) and a
/// Gauss–Jacobi rule in `u = x_1/r`.
pub fn weighted_spacetime_check(profile: WeightedProfile, d: usize, grid: &WeightedGrid) -> Result<WeightedCheck> {
    check_dimension(d)?;
    let b = match profile {
        WeightedProfile::Gaussian(b) if b.re > 0.0 => b,
        WeightedProfile::Gaussian(b) => return Err(Error::InvalidParameter(format!("need Re B > 0, got {b}"))),
        WeightedProfile::Dipole(_) => Complex64::one(),
    };
    let df = d as f64;
    let radial = gauss_rule(RuleKind::Laguerre { nu: df / 2.0 - 2.0 }, grid.radial_nodes)?;
    let ang_exp = (df - 3.0) / 2.0;
    let angular = gauss_rule(
        RuleKind::Jacobi {
            alpha: ang_exp,
            beta: ang_exp,
        },
        grid.angular_nodes,
    )?;
    let rim = sphere_area(d - 1);
    let e1: Vec<u32> = (0..d).map(|i| u32::from(i == 0)).collect();
    let zero = vec![0u32; d];

    let mut total = 0.0;
    for j in 0..grid.time_nodes {
        let s = -0.5 + (j as f64 + 0.5) / grid.time_nodes as f64;
        let t = -(PI * s).tan() / (4.0 * PI);
        let beta = (b / (Complex64::one() + Complex64::new(0.0, 4.0 * PI * t) * b)).re;
        let mut inner = 0.0;
        for (&v, &wv) in radial.nodes.iter().zip(&radial.weights) {
            let r = (v / (2.0 * PI * beta)).sqrt();
            let shell = match profile {
                WeightedProfile::Gaussian(b) => {
                    let u = if b == Complex64::one() { evolve_psi(0, t, r, d) } else { evolve_gaussian(b, t, &radial_point(r, 1.0, d)) };
                    u.norm_sqr() * angular.weights.iter().sum::<f64>()
                }
                WeightedProfile::Dipole(eps) => angular
                    .nodes
                    .iter()
                    .zip(&angular.weights)
                    .map(|(&c, &wc)| {
                        let x = radial_point(r, c, d);
                        wc * (evolve_phi(&zero, t, &x) + eps * evolve_phi(&e1, t, &x)).norm_sqr()
                    })
                    .sum(),
            };
            inner += wv * v.exp() * shell;
        }
        inner *= rim * 0.5 * (2.0 * PI * beta).powf(-(df - 2.0) / 2.0);
        total += inner * (1.0 + 16.0 * PI * PI * t * t) / 4.0;
    }
    let lhs = total / grid.time_nodes as f64;

    let (mass, dist2) = match profile {
        WeightedProfile::Gaussian(b) => ((2.0 * b.re).powf(-df / 2.0), 0.0),
        WeightedProfile::Dipole(eps) => {
            let unit = 2f64.powf(-df / 2.0);
            (unit * (1.0 + eps * eps), unit * eps * eps)
        }
    };
    let c = PI / (df - 2.0);
    Ok(WeightedCheck {
        lhs,
        rhs: c * mass,
        bound: c * (mass - 2.0 / df * dist2),
        dist2,
    })
}

/// The point `r (u, √(1-u²), 0, …)`.
fn radial_point(r: f64, u: f64, d: usize) -> Vec<f64> {
    let mut x = vec![0.0; d];
    x[0] = r * u;
    x[1] = r * (1.0 - u * u).max(0.0).sqrt();
    x
}

/// `(lhs, rhs)` for the Gaussian `e^{-π‖x‖²}`, where equality holds.
pub fn weighted_spacetime_gaussian_check(d: usize) -> Result<(f64, f64)> {
    let c = weighted_spacetime_check(WeightedProfile::Gaussian(Complex64::one()), d, &WeightedGrid::default())?;
    Ok((c.lhs, c.rhs))
}
