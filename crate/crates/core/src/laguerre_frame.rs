//! The Laguerre operator `Q` on coefficient pairs `φ(a, b)`:
//! `Q(a,b,c,d) = ∫ L_a(x/2) L_b(x/2) L_c(x/2) L_d(x/2) e^{-x} dx` and its
//! sector blocks `Q_S = [Q(a, S-a, c, S-c)]_{a,c}`.

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::eigen::{symmetric_eigen, SymMatrix};
use crate::error::{Error, Result};
use crate::exactnum::{binomial_int, factorial_int, int, max_abs, ratio, to_f64, Rational};
use crate::orthopoly::{integrate_exponential, laguerre, Poly};

pub const DEFAULT_SECTOR_CAP: u32 = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QIndex {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
}

impl QIndex {
    pub fn new(a: u32, b: u32, c: u32, d: u32) -> Self {
        QIndex { a, b, c, d }
    }

    pub fn total(&self) -> u32 {
        self.a + self.b + self.c + self.d
    }
}

/// `L_n(x/2)` with `ν = 0`.
pub fn laguerre_half(n: u32) -> Poly {
    laguerre(n, &Rational::zero())
        .expect("ν = 0 is admissible")
        .dilate(&ratio(1, 2))
}

/// `∫_0^∞ p(x) q(x) e^{-x} dx` without forming the product polynomial.
fn exponential_pairing(p: &Poly, q: &Poly) -> Rational {
    let deg = p.coeffs().len() + q.coeffs().len();
    let facts: Vec<Rational> = (0..deg as u32).map(|j| Rational::from_integer(factorial_int(j))).collect();
    let mut acc = Rational::zero();
    for (i, pi) in p.coeffs().iter().enumerate() {
        if pi.is_zero() {
            continue;
        }
        for (j, qj) in q.coeffs().iter().enumerate() {
            if !qj.is_zero() {
                acc += pi * qj * &facts[i + j];
            }
        }
    }
    acc
}

pub fn q_coefficient(idx: QIndex) -> Rational {
    let p = &laguerre_half(idx.a) * &laguerre_half(idx.b);
    let q = &laguerre_half(idx.c) * &laguerre_half(idx.d);
    let v = exponential_pairing(&p, &q);
    debug_assert_eq!(v, integrate_exponential(&(&p * &q), 0));
    v
}

/// Square block `Q_S`, indexed by `a, c ∈ 0..=S`.
#[derive(Clone, Debug, PartialEq)]
pub struct SectorMatrix {
    pub s: u32,
    pub entries: Vec<Vec<Rational>>,
}

impl SectorMatrix {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn row_sums(&self) -> Vec<Rational> {
        self.entries
            .iter()
            .map(|row| row.iter().fold(Rational::zero(), |acc, v| acc + v))
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..i).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    pub fn all_positive(&self) -> bool {
        self.entries.iter().flatten().all(|v| *v > Rational::zero())
    }

    pub fn to_f64(&self) -> SymMatrix {
        SymMatrix::from_fn(self.dim(), |i, j| to_f64(&self.entries[i][j]))
    }

    pub fn apply(&self, phi: &[Rational]) -> Vec<Rational> {
        self.entries
            .iter()
            .map(|row| row.iter().zip(phi).fold(Rational::zero(), |acc, (q, v)| acc + q * v))
            .collect()
    }
}

fn check_cap(s: u32, cap: u32) -> Result<()> {
    if s > cap {
        return Err(Error::CapExceeded {
            what: "Laguerre sector",
            size: s as u128,
            cap: cap as u128,
        });
    }
    Ok(())
}

/// Exact `Q_S` without validation.
fn build_qs(s: u32) -> SectorMatrix {
    let rows: Vec<Poly> = (0..=s).map(|a| &laguerre_half(a) * &laguerre_half(s - a)).collect();
    let n = rows.len();
    let mut entries = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            let v = exponential_pairing(&rows[i], &rows[j]);
            entries[j][i] = v.clone();
            entries[i][j] = v;
        }
    }
    SectorMatrix { s, entries }
}

/// `Q_S`, checked to be symmetric, entrywise positive and doubly stochastic
/// before it is returned.
pub fn assemble_qs(s: u32, cap: u32) -> Result<SectorMatrix> {
    check_cap(s, cap)?;
    let m = build_qs(s);
    if let Some((row, sum)) = m.row_sums().into_iter().enumerate().find(|(_, v)| !v.is_one()) {
        return Err(Error::Consistency(format!(
            "Q_{s} row {row} sums to {sum}, expected 1"
        )));
    }
    if !m.all_positive() {
        return Err(Error::Consistency(format!("Q_{s} has a non-positive entry")));
    }
    if !m.is_symmetric() {
        return Err(Error::Consistency(format!("Q_{s} is not symmetric")));
    }
    Ok(m)
}

/// `F_S[u][a] = ((S-u)! u!)/(a!(S-a)! 2^S) · (Σ_r (-1)^r binom(a,r) binom(S-a,u-r))²`,
/// so that `Q_S = F_Sᵀ F_S`.
pub fn f_matrix(s: u32) -> Vec<Vec<Rational>> {
    let two_s = Rational::from_integer(num_bigint::BigInt::one() << s as usize);
    (0..=s)
        .map(|u| {
            (0..=s)
                .map(|a| {
                    let mut conv = num_bigint::BigInt::zero();
                    for r in 0..=u.min(a) {
                        let t = binomial_int(a as i64, r as i64) * binomial_int((s - a) as i64, (u - r) as i64);
                        if r % 2 == 0 {
                            conv += t;
                        } else {
                            conv -= t;
                        }
                    }
                    let num = factorial_int(s - u) * factorial_int(u) * &conv * &conv;
                    let den = factorial_int(a) * factorial_int(s - a);
                    Rational::new(num, den) / &two_s
                })
                .collect()
        })
        .collect()
}

/// `F_S` together with the exact defect `max |Q_S - F_Sᵀ F_S|`.
pub fn f_factorization(s: u32, cap: u32) -> Result<(Vec<Vec<Rational>>, Rational)> {
    check_cap(s, cap)?;
    let q = build_qs(s);
    let f = f_matrix(s);
    let n = (s + 1) as usize;
    let mut diffs = Vec::with_capacity(n * n);
    for a in 0..n {
        for c in 0..n {
            let ftf = (0..n).fold(Rational::zero(), |acc, u| acc + &f[u][a] * &f[u][c]);
            diffs.push(&q.entries[a][c] - ftf);
        }
    }
    Ok((f, max_abs(&diffs)))
}

/// Eigenvalues of `Q_S`, descending.
pub fn sector_spectrum(s: u32, cap: u32) -> Result<Vec<f64>> {
    let m = assemble_qs(s, cap)?;
    Ok(symmetric_eigen(&m.to_f64())?.values)
}

/// Outcome of checking the spectral picture of `Q_S`: top eigenvalue 1
/// with the constant eigenvector, everything else in `[0, 1)`.
#[derive(Clone, Debug)]
pub struct SpectrumCheck {
    pub s: u32,
    pub values: Vec<f64>,
    /// `|λ_max - 1|`.
    pub top_error: f64,
    /// Sup-distance of the unit top eigenvector from `±(1,…,1)/√(S+1)`.
    pub top_vector_error: f64,
    /// `1 - λ_2` (infinite for `S = 0`).
    pub gap: f64,
    /// Smallest eigenvalue.
    pub min_value: f64,
}

impl SpectrumCheck {
    pub fn holds(&self, tol: f64) -> bool {
        self.top_error <= tol && self.top_vector_error <= tol && self.gap > tol && self.min_value >= -tol
    }
}

pub fn spectrum_check(s: u32, cap: u32) -> Result<SpectrumCheck> {
    let m = assemble_qs(s, cap)?;
    let e = symmetric_eigen(&m.to_f64())?;
    let n = m.dim();
    let c = 1.0 / (n as f64).sqrt();
    let v = &e.vectors[0];
    let sign = if v[0] < 0.0 { -1.0 } else { 1.0 };
    let top_vector_error = v.iter().map(|x| (sign * x - c).abs()).fold(0.0, f64::max);
    Ok(SpectrumCheck {
        s,
        top_error: (e.values[0] - 1.0).abs(),
        top_vector_error,
        gap: if n > 1 { 1.0 - e.values[1] } else { f64::INFINITY },
        min_value: *e.values.last().unwrap(),
        values: e.values,
    })
}

/// `Q_S φ = φ` exactly.
pub fn fixed_point_check(phi: &[Rational], s: u32, cap: u32) -> Result<bool> {
    if phi.len() != (s + 1) as usize {
        return Err(Error::InvalidParameter(format!(
            "sector {s} vectors have {} entries, got {}",
            s + 1,
            phi.len()
        )));
    }
    let m = assemble_qs(s, cap)?;
    Ok(m.apply(phi) == phi)
}

/// `Σ_{a+b=S} L_a(x/2) L_b(x/2) - L_S^{(1)}(x)`, which vanishes identically.
pub fn summation_defect(s: u32) -> Poly {
    let lhs = (0..=s).fold(Poly::zero(), |acc, a| &acc + &(&laguerre_half(a) * &laguerre_half(s - a)));
    let rhs = laguerre(s, &int(1)).expect("ν = 1 is admissible");
    &lhs - &rhs
}

/// The Strichartz quadratic form for radial data `f = Σ α(n) Ψ_n` in the
/// plane: `form = (1/16)⟨φ, Qφ⟩` with `φ(a,b) = α(a)α(b)`, and
/// `norm4 = (1/16)‖φ‖² = (1/16)(Σ|α|²)²`.
pub fn strichartz_form_laguerre(alpha: &[Complex64], cap: u32) -> Result<(f64, f64)> {
    if alpha.is_empty() {
        return Ok((0.0, 0.0));
    }
    let t = (alpha.len() - 1) as u32;
    let mut form = 0.0;
    for s in 0..=2 * t {
        // only a with both a and S-a in the support contribute
        let lo = s.saturating_sub(t);
        let hi = s.min(t);
        let phi: Vec<Complex64> = (lo..=hi).map(|a| alpha[a as usize] * alpha[(s - a) as usize]).collect();
        if phi.iter().all(|v| v.norm_sqr() == 0.0) {
            continue;
        }
        let m = assemble_qs(s, cap)?;
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, a) in (lo..=hi).enumerate() {
            for (j, c) in (lo..=hi).enumerate() {
                acc += phi[i].conj() * to_f64(&m.entries[a as usize][c as usize]) * phi[j];
            }
        }
        form += acc.re;
    }
    let mass: f64 = alpha.iter().map(|a| a.norm_sqr()).sum();
    Ok((form / 16.0, mass * mass / 16.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{gauss_rule, integrate, RuleKind};
    use crate::words::{q_explicit, q_from_words, WordSpec, DEFAULT_WORD_CAP};
    use proptest::prelude::*;

    #[test]
    fn hand_values() {
        assert_eq!(q_coefficient(QIndex::new(0, 0, 0, 0)), int(1));
        assert_eq!(q_coefficient(QIndex::new(1, 0, 1, 0)), ratio(1, 2));
        assert_eq!(q_coefficient(QIndex::new(1, 1, 1, 1)), ratio(1, 2));
    }

    #[test]
    fn matches_gauss_laguerre() {
        let rule = gauss_rule(RuleKind::Laguerre { nu: 0.0 }, 20).unwrap();
        for idx in [QIndex::new(3, 2, 4, 1), QIndex::new(5, 0, 2, 2), QIndex::new(6, 6, 6, 6)] {
            let exact = to_f64(&q_coefficient(idx));
            let q = integrate(&rule, |x| {
                [idx.a, idx.b, idx.c, idx.d]
                    .iter()
                    .map(|&n| crate::orthopoly::laguerre_f64(n, 0.0, x / 2.0))
                    .product()
            })
            .unwrap();
            assert!((q - exact).abs() < 1e-10 * exact.abs().max(1e-3), "{idx:?}: {q} vs {exact}");
        }
    }

    #[test]
    fn small_sectors() {
        assert_eq!(assemble_qs(0, DEFAULT_SECTOR_CAP).unwrap().entries, vec![vec![int(1)]]);
        let q1 = assemble_qs(1, DEFAULT_SECTOR_CAP).unwrap();
        assert_eq!(q1.row_sums(), vec![int(1), int(1)]);
        assert!(matches!(assemble_qs(41, DEFAULT_SECTOR_CAP), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn sector_entries_match_word_oracles() {
        // word enumeration is only affordable while N = 2S stays small
        for s in 0..=12u32 {
            let m = assemble_qs(s, DEFAULT_SECTOR_CAP).unwrap();
            for a in 0..=s {
                for c in 0..=s {
                    let v = &m.entries[a as usize][c as usize];
                    assert_eq!(*v, q_explicit(a, s - a, c, s - c));
                    if s <= 5 {
                        assert_eq!(*v, q_from_words(WordSpec::new(a, s - a, c, s - c), DEFAULT_WORD_CAP).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn factorization_is_exact() {
        let (f, defect) = f_factorization(0, DEFAULT_SECTOR_CAP).unwrap();
        assert_eq!(f, vec![vec![int(1)]]);
        assert!(defect.is_zero());
        for s in 1..=10 {
            assert!(f_factorization(s, DEFAULT_SECTOR_CAP).unwrap().1.is_zero(), "S={s}");
        }
    }

    #[test]
    fn spectra_small() {
        assert_eq!(sector_spectrum(0, DEFAULT_SECTOR_CAP).unwrap().len(), 1);
        for s in 1..=8 {
            let c = spectrum_check(s, DEFAULT_SECTOR_CAP).unwrap();
            assert!(c.holds(1e-10), "{c:?}");
        }
    }

    #[test]
    fn fixed_points() {
        let s = 4;
        let ones = vec![int(1); 5];
        assert!(fixed_point_check(&ones, s, DEFAULT_SECTOR_CAP).unwrap());
        let mut e0 = vec![int(0); 5];
        e0[0] = int(1);
        assert!(!fixed_point_check(&e0, s, DEFAULT_SECTOR_CAP).unwrap());
        let mut bumped = ones.clone();
        bumped[0] += ratio(1, 100);
        bumped[1] -= ratio(1, 100);
        assert!(!fixed_point_check(&bumped, s, DEFAULT_SECTOR_CAP).unwrap());
        assert!(fixed_point_check(&ones, 3, DEFAULT_SECTOR_CAP).is_err());
    }

    #[test]
    fn summation_formula_and_unit_mass() {
        for s in 0..=12 {
            assert!(summation_defect(s).is_zero(), "S={s}");
            let l1 = laguerre(s, &int(1)).unwrap();
            assert_eq!(integrate_exponential(&l1, 0), int(1));
        }
    }

    #[test]
    fn form_on_gaussian_and_geometric_data() {
        let (form, norm4) = strichartz_form_laguerre(&[Complex64::new(1.0, 0.0)], DEFAULT_SECTOR_CAP).unwrap();
        assert!((form - 1.0 / 16.0).abs() < 1e-15 && (norm4 - 1.0 / 16.0).abs() < 1e-15);

        let geo: Vec<Complex64> = (0..=12).map(|n| Complex64::new(0.5f64.powi(n), 0.0)).collect();
        let (form, norm4) = strichartz_form_laguerre(&geo, DEFAULT_SECTOR_CAP).unwrap();
        let r = form / norm4;
        assert!(r <= 1.0 + 1e-12 && r >= 1.0 - 1e-6, "ratio {r}");

        let bumpy = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
        let (form, norm4) = strichartz_form_laguerre(&bumpy, DEFAULT_SECTOR_CAP).unwrap();
        assert!(form < norm4 * (1.0 - 1e-3));
    }

    proptest! {
        #[test]
        fn q_symmetries(a in 0u32..4, b in 0u32..4, c in 0u32..4, d in 0u32..4) {
            let base = q_coefficient(QIndex::new(a, b, c, d));
            prop_assert!(base > Rational::zero());
            prop_assert_eq!(&base, &q_coefficient(QIndex::new(b, a, c, d)));
            prop_assert_eq!(&base, &q_coefficient(QIndex::new(a, b, d, c)));
            prop_assert_eq!(&base, &q_coefficient(QIndex::new(c, d, a, b)));
        }

        #[test]
        fn form_bounded_by_norm(re in proptest::collection::vec(-1.0f64..1.0, 1..6), im in proptest::collection::vec(-1.0f64..1.0, 6)) {
            let alpha: Vec<Complex64> = re.iter().zip(&im).map(|(&r, &i)| Complex64::new(r, i)).collect();
            let (form, norm4) = strichartz_form_laguerre(&alpha, DEFAULT_SECTOR_CAP).unwrap();
            prop_assert!(form <= norm4 * (1.0 + 1e-12) + 1e-300);
            prop_assert!(form >= -1e-15);
        }
    }
}
