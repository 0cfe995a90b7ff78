//! Floating-point special functions not covered by `libm` directly.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// `|S^{d-1}| = 2π^{d/2} / Γ(d/2)`.
pub fn sphere_area(d: usize) -> f64 {
    let h = d as f64 / 2.0;
    2.0 * PI.powf(h) / libm::tgamma(h)
}

/// `log|Γ(x)|` together with the sign of `Γ(x)`. Fails at the poles
/// `x ∈ {0, -1, -2, ...}`.
pub fn lgamma_signed(x: f64) -> Result<(f64, f64)> {
    if x <= 0.0 && x == x.floor() {
        return Err(Error::InvalidParameter(format!("Γ has a pole at {x}")));
    }
    let (v, s) = libm::lgamma_r(x);
    Ok((v, if s < 0 { -1.0 } else { 1.0 }))
}

/// `Λ_ν(z) = J_ν(z) / z^ν`, entire in `z`, for integer or half-integer `ν ≥ -1/2`.
pub fn bessel_lambda(nu: f64, z: f64) -> Result<f64> {
    let twice = 2.0 * nu;
    if twice != twice.round() || nu < -0.5 {
        return Err(Error::InvalidParameter(format!(
            "Bessel order must be an integer or half-integer ≥ -1/2, got {nu}"
        )));
    }
    let z = z.abs();
    if z < 2.0 + nu.max(0.0) {
        return Ok(lambda_series(nu, z));
    }
    if nu == nu.round() {
        let n = nu as i32;
        return Ok(libm::jn(n, z) / z.powi(n));
    }
    // ν = l + 1/2: J_ν(z) = sqrt(2z/π) j_l(z), j_l by upward recurrence (z > l here)
    let l = (nu - 0.5).round() as i32;
    let jl = if l == -1 {
        z.cos() / z
    } else {
        let (mut prev, mut cur) = (z.sin() / z, z.sin() / (z * z) - z.cos() / z);
        if l == 0 {
            cur = prev;
        } else {
            for k in 1..l {
                let next = (2 * k + 1) as f64 / z * cur - prev;
                prev = cur;
                cur = next;
            }
        }
        cur
    };
    Ok((2.0 * z / PI).sqrt() * jl / z.powf(nu))
}

fn lambda_series(nu: f64, z: f64) -> f64 {
    // Σ_k (-z²/4)^k / (k! Γ(k+ν+1)) / 2^ν
    let q = -z * z / 4.0;
    let mut term = 1.0 / libm::tgamma(nu + 1.0);
    let mut acc = term;
    for k in 1..200 {
        let k = k as f64;
        term *= q / (k * (k + nu));
        acc += term;
        if term.abs() < 1e-18 * acc.abs() {
            break;
        }
    }
    acc / 2f64.powf(nu)
}
