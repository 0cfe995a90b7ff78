//! Checks that tie several modules together through the public API.

use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use strichartz_core::exactnum::to_f64;
use strichartz_core::hermite_frame::t_omega_apply;
use strichartz_core::laguerre_frame::{q_coefficient, QIndex};
use strichartz_core::modes::{Basis, ModeExpansion};
use strichartz_core::schrodinger::{
    equivalence_check_hermite, evolve_expansion, numeric_propagate, Geometry, PropagatorGrid, SampledProfile,
    SpaceTimeGrid,
};
use strichartz_core::special::sphere_area;
use strichartz_core::spherical::{funk_hecke_eigenvalue_numeric, weighted_form, zonal_norm_sq, ZonalExpansion};
use strichartz_core::words::{q_explicit, q_from_words, WordSpec, DEFAULT_WORD_CAP};

fn random_h(rng: &mut ChaCha8Rng, d: usize, modes: usize, max_deg: u32) -> ModeExpansion {
    let mut g = ModeExpansion::new(Basis::HermiteH, d);
    while g.terms.len() < modes {
        let m: Vec<u32> = (0..d).map(|_| rng.gen_range(0..=max_deg)).collect();
        g.push(m, Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    }
    g
}

#[test]
fn gaussian_measure_functional_is_maximized_by_constants() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (p, d) in [(4.0, 2usize), (6.0, 1)] {
        let one = ModeExpansion::new(Basis::HermiteH, d).with_term(vec![0; d], Complex64::new(1.0, 0.0));
        let e = equivalence_check_hermite(&one, p, p, &SpaceTimeGrid::for_expansion(&one, p, p)).unwrap();
        assert!((e.lhs - e.norm_lhs).abs() < 1e-12, "{e:?}");
        for _ in 0..4 {
            let g = random_h(&mut rng, d, 3, 3);
            let e = equivalence_check_hermite(&g, p, p, &SpaceTimeGrid::for_expansion(&g, p, p)).unwrap();
            assert!(e.lhs <= e.norm_lhs * (1.0 + 1e-12), "{e:?}");
            assert!((e.norm_lhs - e.norm_rhs).abs() < 1e-12 * e.norm_rhs);
        }
    }
}

#[test]
fn quarter_turn_rotates_the_flow_functional_in_time() {
    // T_{e^{2πiτ}} shifts the periodic time variable, so the functional is unchanged
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let g = random_h(&mut rng, 1, 3, 4);
    let grid = SpaceTimeGrid::for_expansion(&g, 6.0, 6.0);
    let base = equivalence_check_hermite(&g, 6.0, 6.0, &grid).unwrap().lhs;
    for tau in [0.25, 0.4] {
        let rotated = t_omega_apply(&g, Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * tau)).unwrap();
        let lhs = equivalence_check_hermite(&rotated, 6.0, 6.0, &grid).unwrap().lhs;
        assert!((lhs - base).abs() < 1e-10 * base, "τ={tau}: {lhs} vs {base}");
    }
}

#[test]
fn propagator_matches_closed_form_superpositions() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let grid = PropagatorGrid::default();
    let f = random_h(&mut rng, 1, 4, 6).rebased(Basis::HermitePhi);
    let sampled = SampledProfile::sample(Geometry::Line, &grid, |x| f.eval(&[x])).unwrap();
    let pts: Vec<f64> = (-30..=30).map(|i| i as f64 * 0.2).collect();
    let u = numeric_propagate(&sampled, 0.35, &grid, &pts).unwrap();
    for (x, v) in pts.iter().zip(&u) {
        let w = evolve_expansion(&f, 0.35, &[*x]).unwrap();
        assert!((v - w).norm() < 1e-8, "x={x}: {v} vs {w}");
    }
}

#[test]
fn sphere_form_from_numeric_spectrum() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for d in 3..=5 {
        let coeffs: Vec<Complex64> = (0..6).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        let g = ZonalExpansion::new(d, coeffs.clone()).unwrap();
        let (form, _, _) = weighted_form(&g).unwrap();
        let numeric: f64 = coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| funk_hecke_eigenvalue_numeric(n as u32, d).unwrap() * c.norm_sqr() * zonal_norm_sq(n as u32, d))
            .sum();
        assert!((form - numeric).abs() < 1e-10 * form);
        assert!(form <= sphere_area(d) * g.component_norms_sq().iter().sum::<f64>());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn three_routes_to_q_agree(a in 0u32..4, b in 0u32..4, c in 0u32..4, d in 0u32..4) {
        let integral = q_coefficient(QIndex::new(a, b, c, d));
        prop_assert_eq!(&integral, &q_explicit(a, b, c, d));
        prop_assert_eq!(&integral, &q_from_words(WordSpec::new(a, b, c, d), DEFAULT_WORD_CAP).unwrap());
        // |Q| ≤ 1: the integrand is bounded by the product of L² norms
        prop_assert!(to_f64(&integral).abs() <= 1.0);
    }
}
