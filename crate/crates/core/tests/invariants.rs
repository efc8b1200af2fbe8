mod common;

use std::sync::Arc;

use common::oracle;
use num_traits::Zero;
use rxlip_core::derlog::{derlog_generators, Derlog};
use rxlip_core::invariants::{
    analytic_triviality_check, bruce_roberts_number, good_deformation_check, invariant_report, rx_codimension,
    unit_field_precheck, AnalyticVerdict, DeformationProblem,
};
use rxlip_core::{parse_poly, Poly, VarContext, WeightSystem};

fn ctx(vars: &[&str]) -> Arc<VarContext> {
    VarContext::new(vars.iter().copied(), false, false).unwrap()
}

fn p(s: &str, c: &Arc<VarContext>) -> Poly {
    parse_poly(s, c).unwrap()
}

fn cross_cap() -> (Arc<VarContext>, Derlog) {
    let c = ctx(&["u", "v", "w"]);
    let dl = derlog_generators(&p("v^2 - u^2*w", &c), &WeightSystem::new(vec![1, 2, 2]).unwrap()).unwrap();
    (c, dl)
}

fn problem(vars: &[&str], w: Vec<u32>, phi: &str, f: &str, theta: &str) -> DeformationProblem {
    let c = ctx(vars);
    let dl = derlog_generators(&p(phi, &c), &WeightSystem::new(w).unwrap()).unwrap();
    DeformationProblem::new(&dl, &p(f, &c), &[p(theta, &c)]).unwrap()
}

#[test]
fn cross_cap_mu_br_matches_linear_algebra() {
    let (c, dl) = cross_cap();
    let f = p("u^6 + v^3 + w^3", &c);
    let gens: Vec<Poly> = dl.generators().iter().map(|g| g.apply(&f)).collect();
    let mu = bruce_roberts_number(&f, &dl).unwrap();
    assert_eq!(mu, oracle(&gens, &[1, 2, 2], 60));
    assert!(mu.is_some());
    let cod = rx_codimension(&f, &dl).unwrap();
    assert_eq!(dl.stratum_dim(), 0);
    assert_eq!(cod.formula, mu.map(|m| m - 1));
    assert_eq!(cod.direct, cod.formula);
}

#[test]
fn morse_on_three_space() {
    let c = ctx(&["x", "y", "z"]);
    let dl = Derlog::ambient(&c, &WeightSystem::uniform(3));
    let f = p("x^2 + y^2 + z^2", &c);
    assert_eq!(bruce_roberts_number(&f, &dl).unwrap(), Some(1));
    let cod = rx_codimension(&f, &dl).unwrap();
    let m2: Vec<Poly> = ["x^2", "x*y", "x*z", "y^2", "y*z", "z^2"].iter().map(|s| p(s, &c)).collect();
    let direct = oracle(&m2, &[1, 1, 1], 20).unwrap() - 1;
    assert_eq!((cod.formula, cod.direct), (Some(3), Some(direct)));
    assert_eq!(direct, 3);
}

#[test]
fn more_fields_never_raise_mu_br() {
    let (c, dl) = cross_cap();
    let amb = Derlog::ambient(&c, &WeightSystem::new(vec![1, 2, 2]).unwrap());
    for f in ["u^6 + v^3 + w^3", "u^4 + v^2 + w^2", "u^2 + v + w"] {
        let f = p(f, &c);
        let (a, b) = (bruce_roberts_number(&f, &amb).unwrap(), bruce_roberts_number(&f, &dl).unwrap());
        assert!(a.unwrap() <= b.unwrap());
    }
}

#[test]
fn good_deformations() {
    let prob = problem(&["u", "v", "w"], vec![7, 5, 7], "2*u^5 - v^7 + w^5", "u^5 + v^7 + 2*w^5", "u^3*v^4");
    let g = good_deformation_check(&prob);
    assert!(g.good, "{g:?}");
    assert!(g.notes.iter().any(|n| n.contains("not jointly")));

    let c = ctx(&["x", "y"]);
    let dl = Derlog::ambient(&c, &WeightSystem::uniform(2));
    let morse = DeformationProblem::new(&dl, &p("x^2 + y^2", &c), &[p("x^2 + y^2", &c)]).unwrap();
    assert!(good_deformation_check(&morse).good);

    // The critical point y = -2t/3 leaves the t-axis.
    let split = DeformationProblem::new(&dl, &p("x^2 + y^3", &c), &[p("y^2", &c)]).unwrap();
    let g = good_deformation_check(&split);
    assert!(!g.good);
    assert_eq!(g.failing, vec!["y".to_string()]);
}

#[test]
fn not_in_tangent_space() {
    let i = problem(&["u", "v", "w"], vec![7, 5, 7], "2*u^5 - v^7 + w^5", "u^5 + v^7 + 2*w^5", "u^3*v^4");
    assert_eq!(analytic_triviality_check(&i).verdict, AnalyticVerdict::NotInTangentSpace);
    let ii = problem(
        &["x", "y", "z", "w"],
        vec![3, 3, 3, 2],
        "x^2 + y^2 + z^2 + w^3",
        "2*x^2 - y^2 - 3*z^2 + w^3",
        "x^2*w",
    );
    let r = analytic_triviality_check(&ii);
    assert_eq!(r.verdict, AnalyticVerdict::NotInTangentSpace);
    assert_eq!(r.fixed_t.len(), 3);
    assert!(r.fixed_t.iter().all(|(_, ok)| !ok));
}

#[test]
fn analytic_certificate_reduces_to_zero() {
    let prob = problem(&["u", "v", "w"], vec![1, 2, 2], "v^2 - u^2*w", "u^6 + v^3 + w^3", "u^6 + v^3 + w^3");
    let r = analytic_triviality_check(&prob);
    let AnalyticVerdict::Trivial { unit, cofactors } = &r.verdict else { panic!("{r:?}") };
    assert!(!unit.constant_term().is_zero());
    let gens = prob.apply_all(&r.fields);
    let sum = cofactors.iter().zip(&gens).fold(Poly::zero(prob.ctx()), |acc, (a, g)| &acc + &(a * g));
    assert_eq!(sum, unit * prob.dfdt());
}

#[test]
fn unit_field_cases() {
    let c = ctx(&["x", "y"]);
    let dl = derlog_generators(&p("y", &c), &WeightSystem::uniform(2)).unwrap();
    let prob = DeformationProblem::new(&dl, &p("x", &c), &[p("x^3", &c)]).unwrap();
    assert!(unit_field_precheck(&prob).is_some());

    let amb = Derlog::ambient(&c, &WeightSystem::uniform(2));
    let prob = DeformationProblem::new(&amb, &p("x + x^2", &c), &[p("y^5 + x*y", &c)]).unwrap();
    assert!(unit_field_precheck(&prob).is_some());

    let (c, dl) = cross_cap();
    let prob = DeformationProblem::new(&dl, &p("u^6 + v^3 + w^3", &c), &[p("u^2*w", &c)]).unwrap();
    assert_eq!(unit_field_precheck(&prob), None);
}

#[test]
fn report_is_consistent() {
    let prob = problem(&["u", "v", "w"], vec![1, 2, 2], "v^2 - u^2*w", "u^6 + v^3 + w^3", "u^4*w");
    let r = invariant_report(&prob);
    assert_eq!(r.s, 0);
    assert_eq!(r.rx_cod, r.mu_br.map(|m| m - 1));
    assert_eq!(r.rx_cod, r.rx_cod_direct);
}
