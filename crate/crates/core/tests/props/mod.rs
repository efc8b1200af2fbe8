// Property suites, shared by the core tests and the acceptance run.
#![allow(dead_code)]

use std::sync::Arc;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestCaseError, TestRunner};
use rxlip_core::derlog::{derlog_generators, euler_field, is_tangent, module_member};
use rxlip_core::groebner::{groebner, syzygies};
use rxlip_core::invariants::rx_codimension;
use rxlip_core::poly::rat;
use rxlip_core::{MonomialOrdering, Poly, VarContext, VectorField, WeightSystem};

pub const CASES: u32 = 256;
pub const SEED: u64 = 0x5eed_0001;

type Outcome = Result<(), TestCaseError>;

fn run<S: Strategy>(s: S, f: impl Fn(S::Value) -> Outcome) -> Result<(), String> {
    let config = Config { cases: CASES, rng_seed: RngSeed::Fixed(SEED), failure_persistence: None, ..Config::default() };
    TestRunner::new(config).run(&s, f).map_err(|e| e.to_string())
}

fn ctx(n: usize) -> Arc<VarContext> {
    VarContext::new(["x", "y", "z"].into_iter().take(n), false, false).unwrap()
}

type Terms = Vec<(Vec<u32>, i64)>;

fn terms(n: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Terms> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, n), -5i64..=5), 0..=max_terms)
}

fn build(c: &Arc<VarContext>, t: &Terms) -> Poly {
    t.iter().fold(Poly::zero(c), |acc, (e, k)| &acc + &Poly::monomial(c, e, rat(*k)))
}

fn monomials_of_degree(w: &[u32], d: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for &wi in w {
        let mut next = Vec::new();
        for m in &out {
            let used: u32 = m.iter().zip(w).map(|(a, b)| a * b).sum();
            let mut e = 0;
            while used + e * wi <= d {
                let mut m2 = m.clone();
                m2.push(e);
                next.push(m2);
                e += 1;
            }
        }
        out = next;
    }
    out.into_iter().filter(|m| m.iter().zip(w).map(|(a, b)| a * b).sum::<u32>() == d).collect()
}

/// Weighted homogeneous polynomial of degree `d` from coefficient choices.
fn homogeneous(c: &Arc<VarContext>, w: &[u32], d: u32, coeffs: &[i64]) -> Poly {
    let mons = monomials_of_degree(w, d);
    mons.iter().zip(coeffs.iter().cycle()).fold(Poly::zero(c), |acc, (m, &k)| &acc + &Poly::monomial(c, m, rat(k)))
}

fn weights(n: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(1u32..=3, n)
}

pub fn euler_identity() -> Result<(), String> {
    run((weights(3), 1u32..=8, prop::collection::vec(-4i64..=4, 1..8)), |(w, d, coeffs)| {
        let c = ctx(3);
        let ws = WeightSystem::new(w.clone()).unwrap();
        let p = homogeneous(&c, &w, d, &coeffs);
        prop_assert_eq!(euler_field(&c, &ws).apply(&p), p.scale(&rat(d as i64)));
        Ok(())
    })
}

pub fn bracket_grading() -> Result<(), String> {
    run((weights(3), 0u32..=4, prop::collection::vec(-4i64..=4, 1..6)), |(w, delta, coeffs)| {
        let c = ctx(3);
        let ws = WeightSystem::new(w.clone()).unwrap();
        let comps = (0..3).map(|j| homogeneous(&c, &w, delta + w[j], &coeffs[j % coeffs.len()..])).collect();
        let eta = VectorField::new(&c, comps).unwrap();
        let br = euler_field(&c, &ws).lie_bracket(&eta);
        prop_assert_eq!(br, eta.scale_rational(&rat(delta as i64)));
        Ok(())
    })
}

pub fn derivation_law() -> Result<(), String> {
    run((terms(3, 3, 4), terms(3, 3, 4), prop::collection::vec(terms(3, 2, 3), 3)), |(a, b, f)| {
        let c = ctx(3);
        let (p, q) = (build(&c, &a), build(&c, &b));
        let eta = VectorField::new(&c, f.iter().map(|t| build(&c, t)).collect()).unwrap();
        let lhs = eta.apply(&(&p * &q));
        let rhs = &(&eta.apply(&p) * &q) + &(&p * &eta.apply(&q));
        prop_assert_eq!(lhs, rhs);
        Ok(())
    })
}

pub fn division_identity() -> Result<(), String> {
    run((prop::collection::vec(terms(2, 3, 3), 1..=3), terms(2, 4, 5)), |(g, p)| {
        let c = ctx(2);
        let gens: Vec<Poly> = g.iter().map(|t| build(&c, t)).filter(|q| !q.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        let gb = groebner(&gens, &MonomialOrdering::grevlex_for(&c));
        let p = build(&c, &p);
        let (rem, cof) = gb.normal_form(&p);
        let recombined = gb.polys().iter().zip(&cof).fold(rem.clone(), |acc, (b, k)| &acc + &(b * k));
        prop_assert_eq!(recombined, p);
        prop_assert_eq!(gb.normal_form(&rem).0, rem);
        Ok(())
    })
}

pub fn syzygy_soundness() -> Result<(), String> {
    run(prop::collection::vec(terms(2, 3, 3), 2..=3), |g| {
        let c = ctx(2);
        let gens: Vec<Poly> = g.iter().map(|t| build(&c, t)).collect();
        for s in syzygies(&gens) {
            let sum = s.coords().iter().zip(&gens).fold(Poly::zero(&c), |acc, (a, b)| &acc + &(a * b));
            prop_assert!(sum.is_zero());
        }
        Ok(())
    })
}

pub fn derlog_tangency() -> Result<(), String> {
    run(
        (2usize..=3, weights(3), 2u32..=6, prop::collection::vec(-3i64..=3, 1..6)),
        |(n, w, d, coeffs)| {
            let c = ctx(n);
            let w = &w[..n];
            let ws = WeightSystem::new(w.to_vec()).unwrap();
            prop_assume!(n == 2 || d <= 3 + w.iter().min().unwrap());
            let phi = homogeneous(&c, w, d, &coeffs);
            prop_assume!(!phi.is_zero() && !phi.is_constant());
            let Ok(dl) = derlog_generators(&phi, &ws) else { return Ok(()) };
            for g in dl.generators() {
                prop_assert!(is_tangent(g, &phi));
            }
            prop_assert!(module_member(&euler_field(&c, &ws), dl.generators()).unwrap());
            Ok(())
        },
    )
}

pub fn codimension_identity() -> Result<(), String> {
    run((0usize..4, 2u32..=7, prop::collection::vec(-3i64..=3, 1..6)), |(which, d, coeffs)| {
        let (vars, w, phi): (usize, Vec<u32>, &str) = [
            (2, vec![1, 1], "x*y"),
            (2, vec![3, 2], "x^2 + y^3"),
            (3, vec![1, 2, 2], "y^2 - x^2*z"),
            (2, vec![1, 1], "x"),
        ][which]
            .clone();
        let c = ctx(vars);
        let ws = WeightSystem::new(w.clone()).unwrap();
        let dl = derlog_generators(&rxlip_core::parse_poly(phi, &c).unwrap(), &ws).unwrap();
        let f = homogeneous(&c, &w, d, &coeffs);
        prop_assume!(!f.is_zero());
        let cod = rx_codimension(&f, &dl).unwrap();
        if let (Some(a), Some(b)) = (cod.formula, cod.direct) {
            prop_assert_eq!(a, b);
        }
        Ok(())
    })
}

pub type Suite = (&'static str, fn() -> Result<(), String>);

pub const SUITES: [Suite; 7] = [
    ("euler identity", euler_identity),
    ("bracket grading", bracket_grading),
    ("derivation law", derivation_law),
    ("division identity", division_identity),
    ("syzygy soundness", syzygy_soundness),
    ("derlog tangency", derlog_tangency),
    ("codimension identity", codimension_identity),
];
