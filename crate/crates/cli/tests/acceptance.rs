// One line per acceptance criterion; exits nonzero if any fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;
#[path = "../../core/tests/props/mod.rs"]
mod props;

use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rxlip_core::derlog::{derlog_generators, module_equal, Derlog};
use rxlip_core::groebner::{ideal_membership, local_membership, quotient_dim};
use rxlip_core::invariants::{analytic_triviality_check, AnalyticVerdict, DeformationProblem};
use rxlip_core::rigidity::{
    bracket_divisibility, genericity_checks, polar_curve, reducedness_check, rigidity_verdict, Conclusion,
    RigidityOptions, Status,
};
use rxlip_core::triviality::{
    build_certificate_field, build_certificate_with, degree_criterion, numeric_lipschitz_check, numeric_sup_hypothesis,
    SamplerConfig,
};
use rxlip_core::{parse_poly, Fil, MonomialOrdering, Poly, VarContext, VectorField, WeightSystem};

const DERLOG_LIMIT: Duration = Duration::from_secs(10);
const MEMBERSHIP_LIMIT: Duration = Duration::from_secs(60);
const RIGIDITY_LIMIT: Duration = Duration::from_secs(30);
const NUMERIC_LIMIT: Duration = Duration::from_secs(120);
/// Per-t spread of the Lipschitz estimate.
const SPREAD_TOLERANCE: f64 = 0.1;
/// Growth per radius halving, up to floating-point rounding.
const GROWTH_FLOOR: f64 = 2.0 * (1.0 - 1e-9);

type Check = Result<String, String>;

fn ctx(vars: &[&str]) -> Arc<VarContext> {
    VarContext::new(vars.iter().copied(), false, false).unwrap()
}

fn p(s: &str, c: &Arc<VarContext>) -> Poly {
    parse_poly(s, c).unwrap()
}

fn fields(c: &Arc<VarContext>, list: &[&[&str]]) -> Vec<VectorField> {
    list.iter().map(|f| VectorField::new(c, f.iter().map(|s| p(s, c)).collect()).unwrap()).collect()
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

const CROSS_CAP: [&[&str]; 4] = [&["u", "2*v", "2*w"], &["u", "v", "0"], &["0", "u^2", "2*v"], &["v", "u*w", "0"]];

fn cross_cap_derlog(w: Vec<u32>) -> (Arc<VarContext>, Derlog) {
    let c = ctx(&["u", "v", "w"]);
    let dl = derlog_generators(&p("v^2 - u^2*w", &c), &WeightSystem::new(w).unwrap()).unwrap();
    (c, dl)
}

fn threefold(theta: &str) -> DeformationProblem {
    let c = ctx(&["u", "v", "w"]);
    let dl = derlog_generators(&p("2*u^5 - v^7 + w^5", &c), &WeightSystem::new(vec![7, 5, 7]).unwrap()).unwrap();
    DeformationProblem::new(&dl, &p("u^5 + v^7 + 2*w^5", &c), &[p(theta, &c)]).unwrap()
}

fn quadric(theta: &str) -> DeformationProblem {
    let c = ctx(&["x", "y", "z", "w"]);
    let dl =
        derlog_generators(&p("x^2 + y^2 + z^2 + w^3", &c), &WeightSystem::new(vec![3, 3, 3, 2]).unwrap()).unwrap();
    DeformationProblem::new(&dl, &p("2*x^2 - y^2 - 3*z^2 + w^3", &c), &[p(theta, &c)]).unwrap()
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let (c, dl) = cross_cap_derlog(vec![1, 2, 2]);
    ensure(module_equal(dl.generators(), &fields(&c, &CROSS_CAP)).unwrap(), "cross-cap generators differ")?;
    let t1 = start.elapsed();

    let start = Instant::now();
    let c = ctx(&["x", "y", "z", "w"]);
    let dl =
        derlog_generators(&p("x^2 + y^2 + z^2 + w^3", &c), &WeightSystem::new(vec![3, 3, 3, 2]).unwrap()).unwrap();
    let listed = fields(
        &c,
        &[
            &["3*x", "3*y", "3*z", "2*w"],
            &["2*y", "-2*x", "0", "0"],
            &["2*z", "0", "-2*x", "0"],
            &["3*w^2", "0", "0", "-2*x"],
            &["0", "3*w^2", "0", "-2*y"],
            &["0", "2*z", "-2*y", "0"],
            &["0", "0", "3*w^2", "-2*z"],
        ],
    );
    ensure(module_equal(dl.generators(), &listed).unwrap(), "quadric generators differ")?;
    let t2 = start.elapsed();
    ensure(t1 < DERLOG_LIMIT && t2 < DERLOG_LIMIT, format!("too slow: {t1:?}, {t2:?}"))?;
    Ok(format!("cross-cap 4 fields ({t1:.2?}), quadric 7 fields ({t2:.2?}) module-equal to the listed generators"))
}

fn criterion_2() -> Check {
    let c = ctx(&["u", "v", "w"]);
    let dl = derlog_generators(&p("v^2 - u^2*w", &c), &WeightSystem::new(vec![2, 3, 2]).unwrap()).unwrap();
    let last = DeformationProblem::new(&dl, &p("u^3 + v^2 + w^3", &c), &[p("u^2*w", &c)]).unwrap();
    let cases = [
        (threefold("u^3*v^4"), 41, 37, true),
        (quadric("x^2*w"), 8, 7, true),
        (last, 6, 7, false),
    ];
    let mut seen = Vec::new();
    for (prob, fil, threshold, trivial) in cases {
        let v = &degree_criterion(&prob).map_err(|e| e.to_string())?.verdicts[0];
        seen.push(format!("({}, {}, {})", v.fil, v.threshold, if v.trivial { "trivial" } else { "inconclusive" }));
        ensure(v.fil == Fil::Finite(fil) && v.threshold == threshold && v.trivial == trivial, seen.join(" "))?;
    }
    Ok(seen.join(" "))
}

fn criterion_3() -> Check {
    let start = Instant::now();
    let prob = threefold("u^3*v^4");
    let gens = prob.apply_all(prob.derlog().generators());
    let ord = prob.ordering();
    let c = prob.ctx();
    let mut global = Vec::new();
    for (i, m) in [(0, 10), (1, 14), (2, 10)] {
        let q = &Poly::var(c, i).pow(m) * prob.dfdt();
        ensure(local_membership(&q, &gens, &ord).is_some(), format!("{}^{m} theta not in the local module", c.names()[i]))?;
        global.push(ideal_membership(&q, &gens, &ord).is_some());
    }
    let cert = build_certificate_with(&prob, &[10, 14, 10]).ok_or("no certificate for exponents (10, 14, 10)")?;
    let cc = cert.ctx();
    let rho = [(0, 10), (1, 14), (2, 10)]
        .iter()
        .fold(Poly::zero(cc), |acc, &(i, m)| &acc + &(&Poly::var(cc, i).pow(m) * &Poly::conj_var(cc, i).pow(m)));
    ensure(cert.rho == rho, format!("rho = {}", cert.rho))?;
    ensure(cert.verified && cert.residual(&prob).is_zero(), "certificate identity does not reduce to 0")?;
    let took = start.elapsed();
    ensure(took < MEMBERSHIP_LIMIT, format!("too slow: {took:?}"))?;
    Ok(format!(
        "u^10, v^14, w^10 times theta lie in <dF(eta_j)> in the local ring (unit denominators; polynomial membership: {global:?}); rho = {}; residual exactly 0 ({took:.2?})",
        cert.rho
    ))
}

fn criterion_4() -> Check {
    for (name, prob) in [("x^2*w", quadric("x^2*w")), ("u^3*v^4", threefold("u^3*v^4"))] {
        let r = analytic_triviality_check(&prob);
        ensure(r.verdict == AnalyticVerdict::NotInTangentSpace, format!("{name} reported trivial"))?;
    }
    Ok("x^2*w and u^3*v^4 are not in the tangent space".into())
}

fn criterion_5() -> Check {
    let start = Instant::now();
    let c = ctx(&["x", "w"]);
    let dl = derlog_generators(&p("x^2 + w^3", &c), &WeightSystem::new(vec![3, 2]).unwrap()).unwrap();
    let plane = DeformationProblem::new(&dl, &p("2*x^2 + w^3", &c), &[p("x^2", &c)]).unwrap();
    let v = rigidity_verdict(&plane, &RigidityOptions::default()).map_err(|e| e.to_string())?;
    ensure(
        v.conclusion == Conclusion::NotStronglyTrivial && v.scalar_constant.is_none(),
        format!("plane curve: {:?}", v.conclusion),
    )?;
    let opts = RigidityOptions { kill_sets: Some(vec![vec![1, 2]]), ..Default::default() };
    let v4 = rigidity_verdict(&quadric("x^2"), &opts).map_err(|e| e.to_string())?;
    ensure(
        v4.conclusion == Conclusion::NotStronglyTrivial && v4.scalar_constant.is_none(),
        format!("4 variables: {:?} via {}", v4.conclusion, v4.route),
    )?;
    let took = start.elapsed();
    ensure(took < RIGIDITY_LIMIT, format!("too slow: {took:?}"))?;
    Ok(format!("plane curve: not-strongly-trivial, no c; 4 variables: not-strongly-trivial via {} ({took:.2?})", v4.route))
}

fn criterion_6() -> Check {
    let (c, dl) = cross_cap_derlog(vec![1, 2, 2]);
    let dl = dl.with_generators(fields(&c, &CROSS_CAP)).map_err(|e| e.to_string())?;
    ensure(dl.degrees() == [0, 0, 0, 1], format!("degrees {:?}", dl.degrees()))?;
    let prob = DeformationProblem::new(&dl, &p("u^6 + v^3 + w^3", &c), &[p("u^4*w", &c)]).unwrap();
    let pc = polar_curve(&prob, Some(&[1])).map_err(|e| e.to_string())?;
    let (reduced, _) = reducedness_check(&pc);
    ensure(reduced, format!("dF(eta_2) = {} not squarefree", pc.ideal_gens[1]))?;
    ensure(bracket_divisibility(&prob, 1, 2).map_err(|e| e.to_string())?, "bracket divisibility fails")?;
    let asserted = vec!["lc_cohen_macaulay".to_string()];
    let hyps = genericity_checks(&prob, &pc, &asserted);
    let opts = RigidityOptions { polar_choice: Some(vec![1]), asserted, ..Default::default() };
    let v = rigidity_verdict(&prob, &opts).map_err(|e| e.to_string())?;
    ensure(v.conclusion == Conclusion::Rigid, format!("(1,2,2): {:?}", v.conclusion))?;

    let (c2, dl2) = cross_cap_derlog(vec![2, 3, 2]);
    let prob2 = DeformationProblem::new(&dl2, &p("u^3 + v^2 + w^3", &c2), &[p("u^2*w", &c2)]).unwrap();
    let pc2 = polar_curve(&prob2, None).map_err(|e| e.to_string())?;
    let unique = genericity_checks(&prob2, &pc2, &[]).into_iter().find(|h| h.name == "unique_min_weight").unwrap();
    ensure(unique.status == Status::Fail, "unique minimal weight passes for (2,3,2)")?;
    let v2 = rigidity_verdict(&prob2, &RigidityOptions::default()).map_err(|e| e.to_string())?;
    ensure(v2.conclusion == Conclusion::Inapplicable, format!("(2,3,2): {:?}", v2.conclusion))?;
    let cm = hyps.iter().find(|h| h.name == "lc_cohen_macaulay").unwrap();
    Ok(format!(
        "degrees (0,0,0,1), dF(eta_2) squarefree, bracket divides, (1,2,2) rigid (lc_cohen_macaulay {:?}); (2,3,2) inapplicable",
        cm.status
    ))
}

fn criterion_7() -> Check {
    let mut failed = Vec::new();
    for (name, suite) in props::SUITES {
        if let Err(e) = suite() {
            failed.push(format!("{name}: {e}"));
        }
    }
    ensure(failed.is_empty(), failed.join("; "))?;
    Ok(format!("{} suites x {} cases, seed {:#x}, zero failures", props::SUITES.len(), props::CASES, props::SEED))
}

fn criterion_8() -> Check {
    let cases: [(&[&str], Vec<u32>, &[&str]); 12] = [
        (&["x", "y"], vec![1, 1], &["x", "y"]),
        (&["x", "y"], vec![1, 1], &["x^2", "y^2"]),
        (&["x", "y"], vec![3, 2], &["2*x", "3*y^2"]),
        (&["x", "y"], vec![1, 1], &["x^3", "y^3", "x*y"]),
        (&["x", "y"], vec![4, 3], &["3*x^2", "4*y^3"]),
        (&["x", "y"], vec![1, 1], &["3*x^2 - y^2", "-2*x*y"]),
        (&["x", "y"], vec![2, 1], &["x^2", "x*y^2", "y^5"]),
        (&["x", "y", "z"], vec![1, 1, 1], &["x", "y", "z"]),
        (&["x", "y", "z"], vec![2, 3, 6], &["x^3", "y^2", "z"]),
        (&["x", "y", "z"], vec![1, 1, 1], &["x^2", "y^2", "z^2"]),
        (&["u", "v", "w"], vec![1, 2, 2], &["u^2", "v", "w^2 - u^2*v"]),
        (&["x", "y"], vec![1, 1], &["x*y", "x^3 + y^3"]),
    ];
    let mut values = Vec::new();
    for (vars, w, gens) in cases {
        let c = ctx(vars);
        let ws = WeightSystem::new(w.clone()).unwrap();
        let gens: Vec<Poly> = gens.iter().map(|g| p(g, &c)).collect();
        let got = quotient_dim(&gens, &MonomialOrdering::wgrevlex_for(&c, &ws)).map_err(|e| e.to_string())?;
        let brute = common::oracle(&gens, &w, 40);
        ensure(got == brute, format!("{gens:?}: {got:?} vs {brute:?}"))?;
        values.push(got.map_or("inf".to_string(), |v| v.to_string()));
    }
    ensure(values[..3] == ["1", "4", "2"], format!("{values:?}"))?;
    Ok(format!("{} ideals agree with linear algebra: {}", values.len(), values.join(",")))
}

fn criterion_9() -> Check {
    let start = Instant::now();
    let cfg = SamplerConfig::default();
    let prob = threefold("u^3*v^4");
    let cert = build_certificate_with(&prob, &[10, 14, 10]).ok_or("no certificate")?;
    let lip = numeric_lipschitz_check(&build_certificate_field(&prob, &cert), &cfg).map_err(|e| e.to_string())?;
    ensure(lip.bounded && lip.spread < SPREAD_TOLERANCE, format!("bounded {} spread {}", lip.bounded, lip.spread))?;

    let (c, dl) = cross_cap_derlog(vec![2, 3, 2]);
    let prob2 = DeformationProblem::new(&dl, &p("u^3 + v^2 + w^3", &c), &[p("u^2*w", &c)]).unwrap();
    let sup = numeric_sup_hypothesis(&prob2, &cfg).map_err(|e| e.to_string())?;
    let min_growth = sup.growth.iter().cloned().fold(f64::INFINITY, f64::min);
    ensure(!sup.growth.is_empty() && min_growth >= GROWTH_FLOOR, format!("growth {:?}", sup.growth))?;
    let took = start.elapsed();
    ensure(took < NUMERIC_LIMIT, format!("too slow: {took:?}"))?;
    Ok(format!(
        "certificate quotients bounded, spread {:.4} < {SPREAD_TOLERANCE}; (2,3,2) ratio growth >= {:.6} per halving; seed {} ({took:.2?})",
        lip.spread, min_growth, cfg.seed
    ))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

const SUITE: [(&str, &str, &[&str]); 14] = [
    ("derlog", "cross_cap.toml", &[]),
    ("mubr", "cross_cap.toml", &[]),
    ("mubr", "morse.toml", &[]),
    ("fil", "threefold.toml", &[]),
    ("fil", "quadric.toml", &[]),
    ("good-def", "threefold.toml", &[]),
    ("analytic", "quadric.toml", &[]),
    ("analytic", "morse.toml", &[]),
    ("check-trivial", "cross_cap_232.toml", &[]),
    ("certificate", "threefold.toml", &["--points-per-radius", "64"]),
    ("check-rigidity", "plane_curve.toml", &[]),
    ("check-rigidity", "cross_cap.toml", &[]),
    ("check-rigidity", "cross_cap_232.toml", &[]),
    ("restrict", "quadric_rigidity.toml", &["--kill", "y,z"]),
];

fn run_suite(dir: &Path) -> Result<Vec<Vec<u8>>, String> {
    let mut outputs = Vec::new();
    for (i, (cmd, file, extra)) in SUITE.iter().enumerate() {
        let out = dir.join(format!("{i:02}-{cmd}.json"));
        let status = Command::new(env!("CARGO_BIN_EXE_rxlip"))
            .arg(cmd)
            .arg(fixture(file))
            .args(*extra)
            .args(["--seed", "7", "--out"])
            .arg(&out)
            .output()
            .map_err(|e| e.to_string())?;
        ensure(status.status.success(), format!("{cmd} {file} exited with {}", status.status))?;
        outputs.push(status.stdout);
        outputs.push(std::fs::read(&out).map_err(|e| e.to_string())?);
    }
    Ok(outputs)
}

fn criterion_10() -> Check {
    let a = tempfile::tempdir().map_err(|e| e.to_string())?;
    let b = tempfile::tempdir().map_err(|e| e.to_string())?;
    let first = run_suite(a.path())?;
    let second = run_suite(b.path())?;
    let differing: Vec<usize> = (0..first.len()).filter(|&i| first[i] != second[i]).collect();
    ensure(differing.is_empty(), format!("outputs differ at {differing:?}"))?;
    Ok(format!("{} runs, reports and stdout byte-identical across two passes", SUITE.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("derlog reproduction", criterion_1),
        ("filtration criterion", criterion_2),
        ("membership facts", criterion_3),
        ("non-membership", criterion_4),
        ("rigidity pipeline", criterion_5),
        ("cross-cap rigidity", criterion_6),
        ("invariant suites", criterion_7),
        ("oracle equivalence", criterion_8),
        ("numeric layer", criterion_9),
        ("determinism", criterion_10),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {:>2} FAIL {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
