//! Check suites behind each subcommand.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use strichartz_core::exactnum::{factorial, int, pochhammer, ratio, to_f64};
use strichartz_core::hermite_frame::{idempotency_defect, ks_kernel_check, sector_norm, FrameParams};
use strichartz_core::laguerre_frame::{assemble_qs, f_factorization, q_coefficient, spectrum_check, QIndex};
use strichartz_core::modes::{phi, psi, Basis, ModeExpansion};
use strichartz_core::schrodinger::{
    equivalence_check_hermite, evolve_phi, evolve_psi, gaussian_l2_norm, l2_norm, numeric_propagate, parseval_check,
    sharp_constant, spacetime_norm_gaussian, spacetime_norm_numeric, Geometry, PropagatorGrid, SampledProfile,
    SpaceTimeGrid,
};
use strichartz_core::special::sphere_area;
use strichartz_core::spherical::{
    funk_hecke_eigenvalue_closed, funk_hecke_eigenvalue_numeric, gap_identity, gegenbauer_moment_check,
    weighted_form, weighted_spacetime_check, weighted_spacetime_gaussian_check, WeightedGrid, WeightedProfile,
    ZonalExpansion,
};
use strichartz_core::words::{grid, q_explicit, q_from_words, WordSpec};
use strichartz_core::Error;

use crate::config::RunConfig;
use crate::report::{decimal, Outcome, Table, Task};

pub const SUITES: [&str; 10] = [
    "qtable",
    "words-check",
    "hermite-proj",
    "hermite-norm",
    "ks-check",
    "flow-check",
    "strichartz",
    "equivalence",
    "funk-hecke",
    "weighted",
];

pub struct Suite {
    pub tasks: Vec<Task>,
    pub tables: Vec<Table>,
}

pub fn build(name: &str, cfg: &RunConfig) -> strichartz_core::Result<Suite> {
    let tasks = match name {
        "qtable" => return qtable(cfg),
        "words-check" => words_check(cfg),
        "hermite-proj" => hermite_proj(cfg),
        "hermite-norm" => hermite_norm(cfg),
        "ks-check" => ks_check(cfg),
        "flow-check" => flow_check(cfg),
        "strichartz" => strichartz(cfg),
        "equivalence" => equivalence(cfg),
        "funk-hecke" => return funk_hecke(cfg),
        "weighted" => weighted(cfg),
        other => return Err(Error::InvalidParameter(format!("unknown suite {other}"))),
    };
    Ok(Suite { tasks, tables: Vec::new() })
}

fn qtable(cfg: &RunConfig) -> strichartz_core::Result<Suite> {
    let max_s = cfg.max_s_or(8);
    let cap = cfg.qs_cap;
    let mut rows = Vec::new();
    for s in 0..=max_s {
        let q = assemble_qs(s, cap)?;
        let sums = q.row_sums();
        for (a, row) in q.entries.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                rows.push(vec![
                    s.to_string(),
                    a.to_string(),
                    c.to_string(),
                    v.to_string(),
                    decimal(to_f64(v)),
                    "true".into(),
                    sums[a].to_string(),
                ]);
            }
        }
    }
    let table = Table {
        name: "qtable".into(),
        columns: ["s", "a", "c", "q_exact", "q_decimal", "exact", "row_sum"].map(String::from).to_vec(),
        rows,
    };
    let tol = cfg.tol_spectrum;
    let mut tasks = Vec::new();
    for s in 0..=max_s {
        tasks.push(Task::new(format!("qtable/stochastic/S={s}"), json!({ "s": s }), move || {
            let q = assemble_qs(s, cap)?;
            let (_, defect) = f_factorization(s, cap)?;
            let unit_rows = q.row_sums().iter().all(|r| *r == int(1));
            let pass = unit_rows && q.all_positive() && q.is_symmetric() && defect == int(0);
            Ok(Outcome::holds(
                "row sums 1, entries > 0, symmetric, Q - FᵀF = 0",
                format!("row sums 1: {unit_rows}, positive: {}, defect: {defect}", q.all_positive()),
                pass,
            ))
        }));
        tasks.push(Task::new(format!("qtable/spectrum/S={s}"), json!({ "s": s }), move || {
            let c = spectrum_check(s, cap)?;
            Ok(Outcome::holds(
                "top eigenvalue 1 on (1,…,1), simple, rest in [0,1)",
                format!("top error {:.2e}, gap {:.6}, min {:.2e}", c.top_error, c.gap, c.min_value),
                c.holds(tol),
            ))
        }));
    }
    Ok(Suite { tasks, tables: vec![table] })
}

fn words_check(cfg: &RunConfig) -> Vec<Task> {
    let cap = cfg.word_cap as u128;
    grid(cfg.max_n)
        .into_iter()
        .map(|WordSpec { a, b, c, d }| {
            Task::new(format!("words/{a},{b},{c},{d}"), json!({ "a": a, "b": b, "c": c, "d": d }), move || {
                let integral = q_coefficient(QIndex::new(a, b, c, d));
                let words = q_from_words(WordSpec::new(a, b, c, d), cap)?;
                let explicit = q_explicit(a, b, c, d);
                let matches = words == integral && explicit == integral;
                let mut o = Outcome::exact(&integral, &words).with_detail(json!({
                    "explicit": explicit.to_string(),
                    "matches_integral": matches,
                }));
                o.pass = matches;
                Ok(o)
            })
        })
        .collect()
}

fn frame(k: u32, l: u32, d: u32, s: u32) -> strichartz_core::Result<FrameParams> {
    FrameParams::new(k, l, d, s)
}

fn hermite_proj(cfg: &RunConfig) -> Vec<Task> {
    let cap = cfg.sector_cap;
    let mut tasks = Vec::new();
    for (k, l, d) in [(3, 1, 1), (2, 2, 1), (2, 1, 2)] {
        for s in 0..=cfg.max_s_or(6) {
            tasks.push(Task::new(format!("hermite-proj/{k},{l},{d}/S={s}"), json!({ "k": k, "l": l, "d": d, "s": s }), move || {
                let defect = idempotency_defect(&frame(k, l, d, s)?, cap)?;
                Ok(Outcome::exact(&int(0), &defect))
            }));
        }
    }
    for (k, l, d) in [(2, 1, 3), (2, 1, 4)] {
        tasks.push(Task::new(format!("hermite-proj/{k},{l},{d}/S=2"), json!({ "k": k, "l": l, "d": d, "s": 2 }), move || {
            let defect = idempotency_defect(&frame(k, l, d, 2)?, cap)?;
            Ok(Outcome::holds("nonzero", defect.to_string(), defect != int(0)))
        }));
    }
    tasks
}

fn hermite_norm(cfg: &RunConfig) -> Vec<Task> {
    let cap = cfg.sector_cap;
    let tol = cfg.tol_norm;
    let mut tasks = Vec::new();
    for (k, l, d) in [(2, 1, 3), (3, 1, 2), (2, 1, 4), (4, 1, 2), (2, 1, 6)] {
        for s in 0..=cfg.max_s_or(8) {
            tasks.push(Task::new(format!("hermite-norm/{k},{l},{d}/S={s}"), json!({ "k": k, "l": l, "d": d, "s": s }), move || {
                let p = frame(k, l, d, s)?;
                let n = sector_norm(&p, cap)?;
                let h = s / 2;
                let expect = pochhammer(&p.mu(), h) / factorial(h);
                Ok(Outcome::relative(to_f64(&expect), n.numeric, tol).with_detail(json!({
                    "mu": p.mu().to_string(),
                    "predicted_exact": expect.to_string(),
                    "route": format!("{:?}", n.route),
                    "sector_dim": n.sector_dim,
                })))
            }));
        }
    }
    tasks
}

fn ks_check(cfg: &RunConfig) -> Vec<Task> {
    let cap = cfg.sector_cap;
    let mut tasks = Vec::new();
    for (k, l, d) in [(2, 1, 2), (3, 1, 1)] {
        for s in 0..=cfg.max_s_or(5) {
            tasks.push(Task::new(format!("ks-check/{k},{l},{d}/S={s}"), json!({ "k": k, "l": l, "d": d, "s": s }), move || {
                let defect = ks_kernel_check(&frame(k, l, d, s)?, cap)?;
                Ok(Outcome::exact(&int(0), &defect))
            }));
        }
    }
    tasks
}

fn flow_check(cfg: &RunConfig) -> Vec<Task> {
    let tol = cfg.tol_flow;
    let mut tasks = Vec::new();
    for t in [0.1, 1.0] {
        let reach = 3.5 * (1.0 + 16.0 * PI * PI * t * t).sqrt();
        for m in 0..=5u32 {
            tasks.push(Task::new(format!("flow/hermite/m={m}/t={t}"), json!({ "d": 1, "m": m, "t": t }), move || {
                let grid = PropagatorGrid::default();
                let f = SampledProfile::sample(Geometry::Line, &grid, |x| Complex64::new(phi(&[m], &[x]), 0.0))?;
                let pts: Vec<f64> = (0..=80).map(|i| -reach + 2.0 * reach * i as f64 / 80.0).collect();
                let u = numeric_propagate(&f, t, &grid, &pts)?;
                let err = pts.iter().zip(&u).map(|(x, v)| (v - evolve_phi(&[m], t, &[*x])).norm()).fold(0.0, f64::max);
                Ok(Outcome::close(0.0, err, tol))
            }));
        }
        for n in 0..=5u32 {
            tasks.push(Task::new(format!("flow/laguerre/n={n}/t={t}"), json!({ "d": 2, "n": n, "t": t }), move || {
                let grid = PropagatorGrid::default();
                let f = SampledProfile::sample(Geometry::Radial { d: 2 }, &grid, |r| Complex64::new(psi(n, 0.0, r), 0.0))?;
                let pts: Vec<f64> = (0..=40).map(|i| reach * i as f64 / 40.0).collect();
                let u = numeric_propagate(&f, t, &grid, &pts)?;
                let err = pts.iter().zip(&u).map(|(r, v)| (v - evolve_psi(n, t, *r, 2)).norm()).fold(0.0, f64::max);
                Ok(Outcome::close(0.0, err, tol))
            }));
        }
    }
    tasks
}

fn quotient(f: &ModeExpansion, p: f64) -> strichartz_core::Result<f64> {
    let n = spacetime_norm_numeric(f, p, p, &SpaceTimeGrid::for_expansion(f, p, p))?;
    Ok(n / l2_norm(f)?)
}

fn strichartz(cfg: &RunConfig) -> Vec<Task> {
    let one = Complex64::new(1.0, 0.0);
    let radial = ModeExpansion::new(Basis::LaguerrePsi, 2).with_term(vec![0], one);
    let line = ModeExpansion::new(Basis::HermitePhi, 1).with_term(vec![0], one);
    // higher modes at relative L² weight 0.3
    let radial_p = radial.clone().with_term(vec![2], Complex64::new(0.3, 0.0));
    let line_p = line.clone().with_term(vec![3], Complex64::new(0.3 / 6f64.sqrt(), 0.0));
    let margin = cfg.min_perturbation_margin;
    let mut tasks = Vec::new();
    for (id, f, p, tol) in [
        ("strichartz/4,4,2/psi0", radial.clone(), 4.0, cfg.tol_quotient_442),
        ("strichartz/6,6,1/phi0", line.clone(), 6.0, cfg.tol_quotient_661),
    ] {
        tasks.push(Task::new(id, json!({ "p": p, "q": p, "d": f.dim }), move || {
            Ok(Outcome::close(sharp_constant(p, f.dim), quotient(&f, p)?, tol))
        }));
    }
    for (id, f, g, p) in [
        ("strichartz/4,4,2/perturbed", radial, radial_p, 4.0),
        ("strichartz/6,6,1/perturbed", line, line_p, 6.0),
    ] {
        tasks.push(Task::new(id, json!({ "p": p, "q": p, "d": f.dim, "relative_weight": 0.3 }), move || {
            let gap = quotient(&f, p)? - quotient(&g, p)?;
            Ok(Outcome::holds("margin above the minimum", decimal(gap), gap > margin))
        }));
    }
    let tol = cfg.tol_quotient_661;
    for (re, im) in [(2.0, 0.0), (0.7, 0.9)] {
        tasks.push(Task::new(format!("strichartz/4,4,2/gaussian/B={re}{im:+}i"), json!({ "b_re": re, "b_im": im }), move || {
            let b = Complex64::new(re, im);
            let q = spacetime_norm_gaussian(b, 4.0, 4.0, 2, 12, 400)? / gaussian_l2_norm(b, 2);
            Ok(Outcome::relative(sharp_constant(4.0, 2), q, tol))
        }));
    }
    tasks
}

fn random_modes(rng: &mut ChaCha8Rng, basis: Basis, d: usize, count: usize, max_index: u32) -> ModeExpansion {
    let mut g = ModeExpansion::new(basis, d);
    while g.terms.len() < count {
        let m: Vec<u32> = (0..d).map(|_| rng.gen_range(0..=max_index)).collect();
        if g.terms.iter().all(|(i, _)| *i != m) {
            g.push(m, Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        }
    }
    g
}

fn equivalence(cfg: &RunConfig) -> Vec<Task> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (tol, ptol) = (cfg.tol_equivalence, cfg.tol_parseval);
    let mut tasks = Vec::new();
    for (p, d) in [(4.0, 2usize), (6.0, 1)] {
        for i in 0..5 {
            let g = random_modes(&mut rng, Basis::HermiteH, d, 3, 3);
            let inputs = json!({ "p": p, "q": p, "d": d, "modes": mode_list(&g) });
            tasks.push(Task::new(format!("equivalence/{p},{p},{d}/{i}"), inputs, move || {
                let e = equivalence_check_hermite(&g, p, p, &SpaceTimeGrid::for_expansion(&g, p, p))?;
                Ok(Outcome::close(1.0, e.ratio, tol).with_detail(json!({
                    "lhs": e.lhs, "rhs": e.rhs, "norm_lhs": e.norm_lhs, "norm_rhs": e.norm_rhs,
                })))
            }));
        }
    }
    for d in [1usize, 2] {
        for i in 0..5 {
            let f = random_modes(&mut rng, Basis::HermitePhi, d, 4, 6);
            let inputs = json!({ "d": d, "modes": mode_list(&f) });
            tasks.push(Task::new(format!("parseval/d={d}/{i}"), inputs, move || {
                let (lhs, rhs) = parseval_check(&f)?;
                Ok(Outcome::relative(rhs, lhs, ptol))
            }));
        }
    }
    tasks
}

fn mode_list(g: &ModeExpansion) -> serde_json::Value {
    g.terms.iter().map(|(m, c)| json!({ "index": m, "re": c.re, "im": c.im })).collect()
}

fn funk_hecke(cfg: &RunConfig) -> strichartz_core::Result<Suite> {
    let tol = cfg.tol_funk_hecke;
    let mut rows = Vec::new();
    let mut tasks = Vec::new();
    for d in 3..=5usize {
        for n in 0..=10u32 {
            let (r, _) = funk_hecke_eigenvalue_closed(n, d)?;
            let closed = to_f64(&r) * sphere_area(d);
            rows.push(vec![
                d.to_string(),
                n.to_string(),
                r.to_string(),
                decimal(closed),
                decimal(funk_hecke_eigenvalue_numeric(n, d)?),
            ]);
            tasks.push(Task::new(format!("funk-hecke/d={d}/n={n}"), json!({ "d": d, "n": n }), move || {
                Ok(Outcome::relative(closed, funk_hecke_eigenvalue_numeric(n, d)?, tol))
            }));
        }
        tasks.push(Task::new(format!("funk-hecke/gap/d={d}"), json!({ "d": d, "max_n": 30 }), move || {
            let (gap, at) = gap_identity(d, 30)?;
            let sharp = ratio(2, d as i64);
            let mut o = Outcome::exact(&sharp, &gap).with_detail(json!({ "attained_at": at }));
            o.pass = o.pass && at == vec![1];
            Ok(o)
        }));
    }
    for nu in [ratio(1, 2), int(1), ratio(3, 2)] {
        for a in [ratio(1, 4), nu.clone()] {
            for n in 0..=8u32 {
                let (nu, a) = (nu.clone(), a.clone());
                let inputs = json!({ "n": n, "nu": nu.to_string(), "a": a.to_string() });
                tasks.push(Task::new(format!("gegenbauer-moment/nu={nu}/a={a}/n={n}"), inputs, move || {
                    let (lhs, rhs) = gegenbauer_moment_check(n, &nu, &a)?;
                    Ok(Outcome::relative(rhs, lhs, 1e-9))
                }));
            }
        }
    }
    let table = Table {
        name: "funk-hecke".into(),
        columns: ["d", "n", "factor_exact", "eigenvalue_closed", "eigenvalue_numeric"].map(String::from).to_vec(),
        rows,
    };
    Ok(Suite { tasks, tables: vec![table] })
}

fn weighted(cfg: &RunConfig) -> Vec<Task> {
    let tol = cfg.tol_weighted;
    let mut tasks = vec![Task::new("weighted/gaussian/d=3", json!({ "d": 3 }), move || {
        let (lhs, rhs) = weighted_spacetime_gaussian_check(3)?;
        Ok(Outcome::relative(PI * 2f64.powf(-1.5), lhs, tol).with_detail(json!({ "rhs": rhs })))
    })];
    for (re, d) in [(2.0, 3usize), (1.0, 4)] {
        tasks.push(Task::new(format!("weighted/gaussian/B={re}/d={d}"), json!({ "b": re, "d": d }), move || {
            let c = weighted_spacetime_check(WeightedProfile::Gaussian(Complex64::new(re, 0.0)), d, &WeightedGrid::default())?;
            Ok(Outcome::relative(c.rhs, c.lhs, tol))
        }));
    }
    tasks.push(Task::new("weighted/dipole/d=3", json!({ "d": 3, "eps": 0.3 }), move || {
        let c = weighted_spacetime_check(WeightedProfile::Dipole(0.3), 3, &WeightedGrid::default())?;
        let mut o = Outcome::relative(c.bound, c.lhs, tol);
        o.pass = o.pass && c.lhs < c.rhs;
        Ok(o.with_detail(json!({ "rhs": c.rhs, "dist2": c.dist2 })))
    }));
    for (label, coeffs, strict) in [("constant", vec![1.0], false), ("degree-1", vec![0.0, 1.0], false), ("degree-2", vec![0.0, 0.0, 1.0], true)] {
        tasks.push(Task::new(format!("weighted/form/{label}"), json!({ "d": 3, "coeffs": coeffs }), move || {
            let g = ZonalExpansion::new(3, coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())?;
            let (form, bound, _) = weighted_form(&g)?;
            let pass = if strict { form < bound } else { (form - bound).abs() <= 1e-12 * bound };
            let expected = if strict { "form < bound" } else { "form = bound" };
            Ok(Outcome::holds(expected, format!("{} vs {}", decimal(form), decimal(bound)), pass))
        }));
    }
    tasks
}
