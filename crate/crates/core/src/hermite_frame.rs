//! The Hermite sector operators `P_S`: exact assembly over `ℓ×k` frames of
//! multi-indices, projection test, spectral norm, the `K_S` kernel
//! identity, the Mehler kernel and the semigroup `T_ω`.
//!
//! `H_m` are the monic (probabilists') Hermite polynomials, orthogonal for
//! `dγ(x) = (2π)^{-1/2} e^{-x²/2} dx`. The scale `λ = √(1/k)` is never
//! stored; only `λ² = 1/k` enters, since every surviving Gaussian moment
//! carries an even power of `λ`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::eigen::{largest_eigenvalue, SymMatrix};
use crate::error::{Error, Result};
use crate::exactnum::{binomial_int, factorial, factorial_int, max_abs, pochhammer, ratio, to_f64, Rational};
use crate::modes::{Basis, ModeExpansion};
use crate::multipoly::MultiPoly;
use crate::orthopoly::{hermite_f64, hermite_table, integrate_gaussian, integrate_gaussian_mixed, GradedPoly, Poly};

/// Default cap on the number of frame indices in one sector.
pub const DEFAULT_SECTOR_CAP: usize = 20_000;

/// Sectors up to this size use a dense eigen-solve on the sector itself;
/// larger ones go through the dual Gram matrix.
pub const DIRECT_NORM_LIMIT: usize = 500;

/// `p = 2k`, `q = 2kℓ`, dimension `d`, sector degree `S`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FrameParams {
    pub k: u32,
    pub l: u32,
    pub d: u32,
    pub s: u32,
}

impl FrameParams {
    pub fn new(k: u32, l: u32, d: u32, s: u32) -> Result<Self> {
        if k < 2 || l < 1 || d < 1 {
            return Err(Error::InvalidParameter(format!(
                "need k ≥ 2, ℓ ≥ 1, d ≥ 1, got (k, ℓ, d) = ({k}, {l}, {d})"
            )));
        }
        Ok(FrameParams { k, l, d, s })
    }

    pub fn with_s(&self, s: u32) -> Self {
        FrameParams { s, ..*self }
    }

    /// `μ = (k-1)ℓd/2`.
    pub fn mu(&self) -> Rational {
        ratio(((self.k - 1) * self.l * self.d) as i64, 2)
    }

    /// `λ² = 1/k`.
    pub fn lambda_sq(&self) -> Rational {
        ratio(1, self.k as i64)
    }

    /// Length `ℓkd` of a flattened frame index.
    pub fn width(&self) -> usize {
        (self.l * self.k * self.d) as usize
    }

    /// Number of `(row, coordinate)` slots `ℓd`; the Gaussian integral
    /// factors over them.
    pub fn slots(&self) -> usize {
        (self.l * self.d) as usize
    }

    /// `binom(S + ℓkd - 1, ℓkd - 1)`.
    pub fn sector_size(&self) -> BigInt {
        let w = self.width() as i64;
        binomial_int(self.s as i64 + w - 1, w - 1)
    }
}

/// A `d`-dimensional multi-index `m`, with `|m| = Σ m_r`.
pub type MultiIndex = Vec<u32>;

/// `m! = Π m_r!`.
pub fn multi_factorial(m: &[u32]) -> BigInt {
    m.iter().map(|&v| factorial_int(v)).product()
}

/// An `ℓ×k` matrix `M = [m^{i,j}]` of `d`-dimensional multi-indices,
/// flattened so that `m^{i,j}_r` sits at `((i·k) + j)·d + r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FrameIndex {
    pub k: u32,
    pub l: u32,
    pub d: u32,
    pub entries: Vec<u32>,
}

impl FrameIndex {
    pub fn new(params: &FrameParams, entries: Vec<u32>) -> Result<Self> {
        if entries.len() != params.width() {
            return Err(Error::InvalidParameter(format!(
                "frame index needs {} entries, got {}",
                params.width(),
                entries.len()
            )));
        }
        Ok(FrameIndex {
            k: params.k,
            l: params.l,
            d: params.d,
            entries,
        })
    }

    /// `m^{i,j}`.
    pub fn block(&self, i: usize, j: usize) -> &[u32] {
        let d = self.d as usize;
        let start = (i * self.k as usize + j) * d;
        &self.entries[start..start + d]
    }

    /// `(m^{i,1}_r, ..., m^{i,k}_r)`: the degrees meeting in slot `(i, r)`.
    pub fn column(&self, i: usize, r: usize) -> impl Iterator<Item = u32> + '_ {
        (0..self.k as usize).map(move |j| self.block(i, j)[r])
    }

    /// `|M|`.
    pub fn total(&self) -> u32 {
        self.entries.iter().sum()
    }

    /// `M! = Π_{i,j} m^{i,j}!`.
    pub fn factorial(&self) -> BigInt {
        multi_factorial(&self.entries)
    }
}

/// Appends every composition of `total` into `parts` nonnegative parts to
/// `out`, leading part descending.
fn compositions(total: u32, parts: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if parts == 1 {
        prefix.push(total);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for first in (0..=total).rev() {
        prefix.push(first);
        compositions(total - first, parts - 1, prefix, out);
        prefix.pop();
    }
}

fn check_sector_cap(params: &FrameParams, cap: usize) -> Result<usize> {
    let size = params.sector_size();
    let size_u = size.to_u128().unwrap_or(u128::MAX);
    if size_u > cap as u128 {
        return Err(Error::CapExceeded {
            what: "Hermite sector",
            size: size_u,
            cap: cap as u128,
        });
    }
    Ok(size_u as usize)
}

/// All frame indices with `|M| = S`, in graded-lexicographic order on the
/// flattened tuple (first component descending).
pub fn enumerate_sector(params: &FrameParams, cap: usize) -> Result<Vec<FrameIndex>> {
    check_sector_cap(params, cap)?;
    let mut raw = Vec::new();
    compositions(params.s, params.width(), &mut Vec::new(), &mut raw);
    raw.into_iter().map(|e| FrameIndex::new(params, e)).collect()
}

/// Memoized one-dimensional integrals `∫ Π H_{n_t}(λx) dγ(x)`, keyed by the
/// sorted degree multiset.
#[derive(Debug)]
pub struct FrameIntegrals {
    lambda_sq: Rational,
    hermite: Vec<Poly>,
    cache: HashMap<Vec<u32>, Rational>,
}

impl FrameIntegrals {
    pub fn new(lambda_sq: Rational) -> Self {
        FrameIntegrals {
            lambda_sq,
            hermite: hermite_table(0),
            cache: HashMap::new(),
        }
    }

    fn hermite(&mut self, n: u32) -> &Poly {
        if n as usize >= self.hermite.len() {
            self.hermite = hermite_table(n);
        }
        &self.hermite[n as usize]
    }

    /// `Π_t H_{n_t}(x)` as an unscaled polynomial.
    fn product(&mut self, degrees: &[u32]) -> Poly {
        let mut acc = Poly::one();
        for &n in degrees {
            acc = &acc * self.hermite(n);
        }
        acc
    }

    /// `∫ Π_t H_{n_t}(λx) dγ(x)`.
    pub fn slot_integral(&mut self, mut degrees: Vec<u32>) -> Rational {
        degrees.sort_unstable();
        if degrees.iter().sum::<u32>() % 2 == 1 {
            return Rational::zero();
        }
        if let Some(v) = self.cache.get(&degrees) {
            return v.clone();
        }
        let p = self.product(&degrees);
        let v = integrate_gaussian(&GradedPoly::scaled(&p, &self.lambda_sq));
        self.cache.insert(degrees, v.clone());
        v
    }

    /// `P(M, N) = Π_{i,r} ∫ Π_j H_{m^{i,j}_r}(λx) H_{n^{i,j}_r}(λx) dγ(x)`.
    pub fn p(&mut self, m: &FrameIndex, n: &FrameIndex) -> Rational {
        let mut acc = Rational::one();
        for i in 0..m.l as usize {
            for r in 0..m.d as usize {
                let degrees: Vec<u32> = m.column(i, r).chain(n.column(i, r)).collect();
                let v = self.slot_integral(degrees);
                if v.is_zero() {
                    return v;
                }
                acc *= v;
            }
        }
        acc
    }
}

/// `P(M, N) = ∫ Π_{i,j} H_{m^{i,j}}(λx^i) H_{n^{i,j}}(λx^i) dγ_d(x^1)…dγ_d(x^ℓ)`.
pub fn p_coefficient(m: &FrameIndex, n: &FrameIndex, params: &FrameParams) -> Rational {
    FrameIntegrals::new(params.lambda_sq()).p(m, n)
}

/// Dense matrix of rationals with a positive diagonal weight vector. For
/// sector operators `entries(M, N) = P(M, N)/M!` and `weights = M!`, so
/// `diag(weights)·entries` is symmetric.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactMatrix {
    pub entries: Vec<Vec<Rational>>,
    pub weights: Vec<Rational>,
}

impl ExactMatrix {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// `weights[i]·entries[i][j] == weights[j]·entries[j][i]` for all pairs.
    pub fn is_weighted_symmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (i + 1..n).all(|j| &self.weights[i] * &self.entries[i][j] == &self.weights[j] * &self.entries[j][i])
        })
    }

    /// `D^{1/2} A D^{-1/2}` in floating point, the operator in the weighted
    /// inner product expressed in an orthonormal basis.
    pub fn symmetrized_f64(&self) -> SymMatrix {
        let w: Vec<f64> = self.weights.iter().map(|v| to_f64(v).sqrt()).collect();
        SymMatrix::from_fn(self.dim(), |i, j| to_f64(&self.entries[i][j]) * w[i] / w[j])
    }

    /// `A²`, skipping zero entries.
    pub fn square(&self) -> Vec<Vec<Rational>> {
        let n = self.dim();
        let mut out = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            for (l, a_il) in self.entries[i].iter().enumerate() {
                if a_il.is_zero() {
                    continue;
                }
                for (j, a_lj) in self.entries[l].iter().enumerate() {
                    if !a_lj.is_zero() {
                        out[i][j] += a_il * a_lj;
                    }
                }
            }
        }
        out
    }

    /// Every entry as a `"num/den"` string (integers print without `/1`).
    pub fn entry_strings(&self) -> Vec<Vec<String>> {
        self.entries.iter().map(|row| row.iter().map(|v| v.to_string()).collect()).collect()
    }
}

/// The sector matrix `A(M, N) = P(M, N)/M!` with weights `M!`, in the order
/// of `enumerate_sector`.
pub fn assemble_p(params: &FrameParams, cap: usize) -> Result<ExactMatrix> {
    let idx = enumerate_sector(params, cap)?;
    let mut ints = FrameIntegrals::new(params.lambda_sq());
    let n = idx.len();
    let mut p = vec![vec![Rational::zero(); n]; n];
    for a in 0..n {
        for b in a..n {
            let v = ints.p(&idx[a], &idx[b]);
            p[b][a] = v.clone();
            p[a][b] = v;
        }
    }
    let weights: Vec<Rational> = idx.iter().map(|m| Rational::from_integer(m.factorial())).collect();
    let entries = p
        .into_iter()
        .zip(&weights)
        .map(|(row, w)| row.into_iter().map(|v| v / w).collect())
        .collect();
    Ok(ExactMatrix { entries, weights })
}

/// `max |A² - A|` over the sector, exactly. Zero iff `P_S` is a projection.
pub fn idempotency_defect(params: &FrameParams, cap: usize) -> Result<Rational> {
    let a = assemble_p(params, cap)?;
    let sq = a.square();
    let diffs: Vec<Rational> = sq
        .iter()
        .zip(&a.entries)
        .flat_map(|(r2, r1)| r2.iter().zip(r1).map(|(x, y)| x - y))
        .collect();
    Ok(max_abs(&diffs))
}

/// `(μ)_{⌊S/2⌋} / ⌊S/2⌋!`, or `None` for `μ = 1/2`, where no value is
/// asserted.
pub fn predicted_norm(params: &FrameParams) -> Option<Rational> {
    let mu = params.mu();
    if mu == ratio(1, 2) {
        return None;
    }
    let h = params.s / 2;
    Some(pochhammer(&mu, h) / factorial(h))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormRoute {
    /// Dense eigen-solve of `D^{1/2} A D^{-1/2}` on the sector.
    Direct,
    /// Eigen-solve of the dual Gram matrix in the Hermite basis of the
    /// `ℓd` variables.
    Dual,
}

#[derive(Clone, Debug)]
pub struct SectorNorm {
    pub numeric: f64,
    pub predicted: Option<Rational>,
    pub route: NormRoute,
    pub sector_dim: usize,
}

impl SectorNorm {
    /// `|numeric - predicted| / predicted`, when a prediction exists.
    pub fn relative_error(&self) -> Option<f64> {
        self.predicted.as_ref().map(|p| {
            let p = to_f64(p);
            (self.numeric - p).abs() / p
        })
    }
}

/// Largest eigenvalue of `D^{1/2} A D^{-1/2}`, assembled on the sector.
pub fn sector_norm_direct(params: &FrameParams, cap: usize) -> Result<f64> {
    let a = assemble_p(params, cap)?;
    largest_eigenvalue(&a.symmetrized_f64())
}

/// `∫ Π_j H_{c_j}(λx) H_α(x) dγ(x) = R·λ^{α mod 2}`; returns `R` for every
/// `α ≤ |c|` of matching parity, indexed by `α`.
fn slot_projections(ints: &mut FrameIntegrals, col: &[u32]) -> Vec<Rational> {
    let s: u32 = col.iter().sum();
    let g = GradedPoly::scaled(&ints.product(col), &ints.lambda_sq);
    (0..=s)
        .map(|alpha| {
            if (s - alpha) % 2 == 1 {
                return Rational::zero();
            }
            let h = ints.hermite(alpha).clone();
            integrate_gaussian_mixed(&g, &h).coeff
        })
        .collect()
}

/// The sector operator is the Gram matrix `B(M, N) = ⟨v_M, v_N⟩` of
/// `v_M = H_M/√(M!)` in `L²(γ_{ℓd})`. Its nonzero spectrum equals that of
/// `G(a, b) = Σ_M ⟨v_M, e_a⟩⟨v_M, e_b⟩` with `e_a = H_a/√(a!)`, and `a`
/// ranges only over `|a| ≤ S`, `|a| ≡ S (mod 2)`. Both the `M` sum and
/// `⟨H_M, H_a⟩` factor over the `ℓd` slots.
pub fn dual_gram(params: &FrameParams) -> (Vec<Vec<u32>>, Vec<Vec<Rational>>) {
    let s_max = params.s;
    let k = params.k as usize;
    let slots = params.slots();
    let lambda_sq = params.lambda_sq();
    let mut ints = FrameIntegrals::new(lambda_sq.clone());

    // kernel[s][α][β] = Σ_{c ∈ ℤ^k, |c| = s} R(c, α) R(c, β) / c!
    let mut kernel: Vec<Vec<Vec<Rational>>> = Vec::new();
    for s in 0..=s_max {
        let mut ks = vec![vec![Rational::zero(); (s + 1) as usize]; (s + 1) as usize];
        let mut cols = Vec::new();
        compositions(s, k, &mut Vec::new(), &mut cols);
        for c in cols {
            let r = slot_projections(&mut ints, &c);
            let cf = Rational::from_integer(multi_factorial(&c));
            for (x, rx) in r.iter().enumerate() {
                if rx.is_zero() {
                    continue;
                }
                for (y, ry) in r.iter().enumerate() {
                    if !ry.is_zero() {
                        ks[x][y] += rx * ry / &cf;
                    }
                }
            }
        }
        kernel.push(ks);
    }

    let mut targets = Vec::new();
    for total in (0..=s_max).rev().filter(|t| (s_max - t) % 2 == 0) {
        compositions(total, slots, &mut Vec::new(), &mut targets);
    }

    let n = targets.len();
    let mut c = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            let v = dual_entry(&kernel, &targets[i], &targets[j], s_max, &lambda_sq);
            c[j][i] = v.clone();
            c[i][j] = v;
        }
    }
    (targets, c)
}

/// `C(a, b) = (λ²)^{(odd(a)+odd(b))/2} Σ_{Σ s_r = S} Π_r kernel[s_r][a_r][b_r]`.
fn dual_entry(kernel: &[Vec<Vec<Rational>>], a: &[u32], b: &[u32], s: u32, lambda_sq: &Rational) -> Rational {
    if a.iter().zip(b).any(|(x, y)| (x + y) % 2 == 1) {
        return Rational::zero();
    }
    fn walk(kernel: &[Vec<Vec<Rational>>], a: &[u32], b: &[u32], left: u32, acc: &Rational, out: &mut Rational) {
        let Some((&ar, a_rest)) = a.split_first() else {
            if left == 0 {
                *out += acc;
            }
            return;
        };
        let br = b[0];
        let b_rest = &b[1..];
        let low = ar.max(br);
        let mut s = low;
        while s <= left {
            let kv = &kernel[s as usize][ar as usize][br as usize];
            if !kv.is_zero() {
                walk(kernel, a_rest, b_rest, left - s, &(acc * kv), out);
            }
            s += 2;
        }
    }
    let mut out = Rational::zero();
    walk(kernel, a, b, s, &Rational::one(), &mut out);
    let odd = a.iter().chain(b).filter(|v| *v % 2 == 1).count();
    out * num_traits::pow(lambda_sq.clone(), odd / 2)
}

/// Largest eigenvalue of the dual Gram matrix `C(a,b)/√(a!b!)`.
pub fn sector_norm_dual(params: &FrameParams) -> Result<f64> {
    let (targets, c) = dual_gram(params);
    let scale: Vec<f64> = targets.iter().map(|a| to_f64(&Rational::from_integer(multi_factorial(a))).sqrt()).collect();
    let g = SymMatrix::from_fn(targets.len(), |i, j| to_f64(&c[i][j]) / (scale[i] * scale[j]));
    largest_eigenvalue(&g)
}

/// Spectral norm of `P_S` in the weighted inner product, with the
/// predicted value `(μ)_{⌊S/2⌋}/⌊S/2⌋!`. Sectors of size at most
/// `DIRECT_NORM_LIMIT` (and the cap) are solved directly, larger ones
/// through the dual Gram matrix, which never enumerates the sector.
pub fn sector_norm(params: &FrameParams, cap: usize) -> Result<SectorNorm> {
    let dim = params.sector_size().to_usize().unwrap_or(usize::MAX);
    let (numeric, route) = if dim <= DIRECT_NORM_LIMIT.min(cap) {
        (sector_norm_direct(params, cap)?, NormRoute::Direct)
    } else {
        (sector_norm_dual(params)?, NormRoute::Dual)
    };
    Ok(SectorNorm {
        numeric,
        predicted: predicted_norm(params),
        route,
        sector_dim: dim,
    })
}

/// `(predicted norm) / (S^{μ-1} / (2^{μ-1} Γ(μ)))` for even `S` in
/// `[s_lo, s_hi]`, evaluated with log-Gamma.
pub fn asymptotic_ratios(mu: f64, s_lo: u32, s_hi: u32) -> Vec<(u32, f64)> {
    (s_lo..=s_hi)
        .filter(|s| s % 2 == 0)
        .map(|s| {
            let h = (s / 2) as f64;
            let ln_pred = libm::lgamma(h + mu) - libm::lgamma(mu) - libm::lgamma(h + 1.0);
            let ln_asym = (mu - 1.0) * (s as f64).ln() - (mu - 1.0) * 2f64.ln() - libm::lgamma(mu);
            (s, (ln_pred - ln_asym).exp())
        })
        .collect()
}

/// `i^n` as an exact Gaussian integer `(re, im)`.
fn unit_power(n: u32, conj: bool) -> (i64, i64) {
    let (re, im) = [(1, 0), (0, 1), (-1, 0), (0, -1)][(n % 4) as usize];
    if conj {
        (re, -im)
    } else {
        (re, im)
    }
}

/// `e^{2πi|m|(t+1/4)} (-i)^{|m|} = e^{2πi|m|t}` for `|m| ≤ max_degree`:
/// after cancelling `e^{2πi|m|t}`, checks `i^{|m|}(-i)^{|m|} = 1` in exact
/// Gaussian integers.
pub fn quarter_turn_identity(max_degree: u32) -> bool {
    (0..=max_degree).all(|m| {
        let (a, b) = unit_power(m, false);
        let (c, d) = unit_power(m, true);
        (a * c - b * d, a * d + b * c) == (1, 0)
    })
}

/// Floating-point counterpart of `quarter_turn_identity` at a given `t`:
/// the largest multiplier mismatch over `|m| ≤ max_degree`.
pub fn quarter_turn_defect(max_degree: u32, t: f64) -> f64 {
    let tau = 2.0 * std::f64::consts::PI;
    (0..=max_degree)
        .map(|m| {
            let m = m as f64;
            let lhs = Complex64::from_polar(1.0, tau * m * (t + 0.25)) * Complex64::new(0.0, -1.0).powf(m);
            let rhs = Complex64::from_polar(1.0, tau * m * t);
            (lhs - rhs).norm()
        })
        .fold(0.0, f64::max)
}

/// Both sides of
/// `Σ_{|M|=S} H_M(x)H_M(y)/M! = Σ_s (μ)_s/s! Σ_{Σ|m_i|=S-2s} Π_i H_{m_i}(x^i)H_{m_i}(y^i)/m_i!`
/// as exact polynomials in the `2ℓd` variables; returns the largest
/// coefficient difference.
pub fn ks_kernel_check(params: &FrameParams, cap: usize) -> Result<Rational> {
    let slots = params.slots();
    let nvars = 2 * slots;
    let sector = enumerate_sector(params, cap)?;
    let table = hermite_table(params.s);

    // Left side with unscaled Hermite factors; λ is restored per monomial.
    let mut lhs = MultiPoly::zero(nvars);
    for m in &sector {
        let mut term = MultiPoly::one(nvars);
        for i in 0..params.l as usize {
            for r in 0..params.d as usize {
                let mut p = Poly::one();
                for c in m.column(i, r) {
                    p = &p * &table[c as usize];
                }
                let slot = i * params.d as usize + r;
                term = &term * &MultiPoly::from_univariate(nvars, slot, &p);
                term = &term * &MultiPoly::from_univariate(nvars, slots + slot, &p);
            }
        }
        lhs = &lhs + &term.scale(&(Rational::one() / Rational::from_integer(m.factorial())));
    }
    let lambda_sq = params.lambda_sq();
    let lhs = lhs.map_coeffs(|exps, c| {
        let deg: u32 = exps.iter().sum();
        c * num_traits::pow(lambda_sq.clone(), (deg / 2) as usize)
    });

    let mu = params.mu();
    let mut rhs = MultiPoly::zero(nvars);
    for s in 0..=params.s / 2 {
        let weight = pochhammer(&mu, s) / factorial(s);
        let mut targets = Vec::new();
        compositions(params.s - 2 * s, slots, &mut Vec::new(), &mut targets);
        for a in targets {
            let mut term = MultiPoly::constant(nvars, weight.clone() / Rational::from_integer(multi_factorial(&a)));
            for (slot, &deg) in a.iter().enumerate() {
                let h = &table[deg as usize];
                term = &term * &MultiPoly::from_univariate(nvars, slot, h);
                term = &term * &MultiPoly::from_univariate(nvars, slots + slot, h);
            }
            rhs = &rhs + &term;
        }
    }

    let diff = &lhs - &rhs;
    Ok(diff.terms().map(|(_, c)| c.abs()).max().unwrap_or_else(Rational::zero))
}

/// `(1-ω²)^{-d/2} exp[-ω²(‖x‖²+‖y‖²)/(2(1-ω²)) + ω x·y/(1-ω²)]`.
pub fn mehler_closed(omega: f64, x: &[f64], y: &[f64]) -> f64 {
    let w2 = omega * omega;
    let one_m = 1.0 - w2;
    let nx: f64 = x.iter().map(|v| v * v).sum();
    let ny: f64 = y.iter().map(|v| v * v).sum();
    let xy: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    one_m.powf(-(x.len() as f64) / 2.0) * (-w2 * (nx + ny) / (2.0 * one_m) + omega * xy / one_m).exp()
}

/// `Σ_{|m| ≤ truncation} ω^{|m|} H_m(x) H_m(y) / m!`.
pub fn mehler_series(omega: f64, truncation: u32, x: &[f64], y: &[f64]) -> f64 {
    let t = truncation as usize;
    // by_degree[n] = Σ_{|m| = n} Π_r H_{m_r}(x_r)H_{m_r}(y_r)/m_r!
    let mut by_degree = vec![0.0; t + 1];
    by_degree[0] = 1.0;
    for (&xr, &yr) in x.iter().zip(y) {
        let mut fact = 1.0;
        let one_d: Vec<f64> = (0..=t)
            .map(|n| {
                if n > 0 {
                    fact *= n as f64;
                }
                hermite_f64(n as u32, xr) * hermite_f64(n as u32, yr) / fact
            })
            .collect();
        let mut next = vec![0.0; t + 1];
        for (a, va) in by_degree.iter().enumerate() {
            for (b, vb) in one_d.iter().enumerate().take(t + 1 - a) {
                next[a + b] += va * vb;
            }
        }
        by_degree = next;
    }
    by_degree.iter().rev().fold(0.0, |acc, v| acc * omega + v)
}

/// `|closed form - truncated series|` of the Mehler kernel at `(x, y)`.
pub fn mehler_kernel_check(omega: f64, truncation: u32, x: &[f64], y: &[f64]) -> Result<f64> {
    if omega.abs() >= 1.0 {
        return Err(Error::InvalidParameter(format!("Mehler kernel needs |ω| < 1, got {omega}")));
    }
    if x.len() != y.len() {
        return Err(Error::InvalidParameter("x and y must have the same dimension".into()));
    }
    Ok((mehler_closed(omega, x, y) - mehler_series(omega, truncation, x, y)).abs())
}

/// `T_ω`: multiplies the coefficient of `H_m` by `ω^{|m|}`.
pub fn t_omega_apply(g: &ModeExpansion, omega: Complex64) -> Result<ModeExpansion> {
    if g.basis != Basis::HermiteH {
        return Err(Error::InvalidParameter("T_ω acts on expansions in H_m".into()));
    }
    if omega.norm() > 1.0 + 1e-12 {
        return Err(Error::InvalidParameter(format!("T_ω needs |ω| ≤ 1, got |ω| = {}", omega.norm())));
    }
    Ok(g.map_coeffs(|m, c| c * omega.powu(m.iter().sum())))
}

/// Upper bound on the number of frames `strichartz_form_hermite` will
/// enumerate.
pub const FORM_FRAME_CAP: usize = 2_000_000;

/// For `g = Σ α(m) H_m`, returns `(⟨φ, Pφ⟩_𝓕, ‖g‖^{2kℓ})` where
/// `φ(M) = Π_{i,j} α(m^{i,j})`. The first equals
/// `∫_I (∫ |𝓗^t g|^{2k} dγ_d)^ℓ dt`; the second is `(Σ |α(m)|² m!)^{kℓ}`.
pub fn strichartz_form_hermite(params: &FrameParams, g: &ModeExpansion) -> Result<(Complex64, f64)> {
    if g.basis != Basis::HermiteH || g.dim != params.d as usize {
        return Err(Error::InvalidParameter(format!(
            "expected an H_m expansion in dimension {}",
            params.d
        )));
    }
    let slots_per_frame = (params.k * params.l) as usize;
    let support: Vec<(&Vec<u32>, Complex64)> = g.terms.iter().filter(|(_, c)| *c != Complex64::zero()).map(|(m, c)| (m, *c)).collect();
    let norm_sq: f64 = support
        .iter()
        .map(|(m, c)| c.norm_sqr() * to_f64(&Rational::from_integer(multi_factorial(m))))
        .sum();
    let norm = norm_sq.powi(slots_per_frame as i32);
    if support.is_empty() {
        return Ok((Complex64::zero(), 0.0));
    }
    let count = (support.len() as u128).checked_pow(slots_per_frame as u32).unwrap_or(u128::MAX);
    if count > FORM_FRAME_CAP as u128 {
        return Err(Error::CapExceeded {
            what: "frames in the Hermite form",
            size: count,
            cap: FORM_FRAME_CAP as u128,
        });
    }

    // Group frames φ(M) by total degree.
    let mut sectors: HashMap<u32, Vec<(FrameIndex, Complex64)>> = HashMap::new();
    let mut choice = vec![0usize; slots_per_frame];
    loop {
        let mut entries = Vec::with_capacity(params.width());
        let mut phi = Complex64::one();
        for &c in &choice {
            entries.extend_from_slice(support[c].0);
            phi *= support[c].1;
        }
        let m = FrameIndex::new(params, entries)?;
        sectors.entry(m.total()).or_default().push((m, phi));
        // odometer
        let mut pos = 0;
        while pos < slots_per_frame {
            choice[pos] += 1;
            if choice[pos] < support.len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
        if pos == slots_per_frame {
            break;
        }
    }

    let mut ints = FrameIntegrals::new(params.lambda_sq());
    let mut degrees: Vec<u32> = sectors.keys().copied().collect();
    degrees.sort_unstable();
    let mut form = Complex64::zero();
    for s in degrees {
        let frames = &sectors[&s];
        for (a, (m, pm)) in frames.iter().enumerate() {
            for (n, pn) in &frames[a..] {
                let p = ints.p(m, n);
                if p.is_zero() {
                    continue;
                }
                let v = pm * pn.conj() * to_f64(&p);
                // P is symmetric, so the mirrored pair contributes the conjugate.
                form += if m == n { v } else { v + v.conj() };
            }
        }
    }
    Ok((form, norm))
}
