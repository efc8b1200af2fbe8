//! Command-line front end: problem files in, text and JSON reports out.

pub mod problem;

use std::fmt::Write as _;

use rxlip_core::invariants::{
    analytic_triviality_check, good_deformation_check, invariant_report, unit_field_precheck, AnalyticVerdict,
    DeformationProblem,
};
use rxlip_core::rigidity::{restrict_to_plane, rigidity_verdict, Conclusion, RigidityOptions};
use rxlip_core::triviality::{
    build_certificate, build_certificate_field, build_certificate_with, degree_criterion, numeric_lipschitz_check,
    numeric_sup_hypothesis, NumericReport, SamplerConfig,
};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub use problem::{Coord, Ordering, ProblemFile};

pub const DEFAULT_CAP: u32 = 16;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] rxlip_core::Error),
    #[error("output error: {0}")]
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Core(_) => 2,
            CliError::Output(_) => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Derlog,
    Mubr,
    Fil,
    GoodDef,
    Analytic,
    CheckTrivial,
    Certificate,
    CheckRigidity,
    Restrict,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Derlog => "derlog",
            Command::Mubr => "mubr",
            Command::Fil => "fil",
            Command::GoodDef => "good-def",
            Command::Analytic => "analytic",
            Command::CheckTrivial => "check-trivial",
            Command::Certificate => "certificate",
            Command::CheckRigidity => "check-rigidity",
            Command::Restrict => "restrict",
        }
    }
}

/// Command-line overrides of the problem file options.
#[derive(Debug, Clone, Default)]
pub struct Flags {
    pub ordering: Option<Ordering>,
    pub cap: Option<u32>,
    pub seed: Option<u64>,
    pub radii: Option<usize>,
    pub radius_factor: Option<f64>,
    pub points_per_radius: Option<usize>,
    pub t_values: Option<Vec<f64>>,
    pub tolerance: Option<f64>,
    pub asserted: Vec<String>,
    pub kill: Vec<Vec<Coord>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Inputs {
    pub variables: Vec<String>,
    pub weights: Vec<u32>,
    pub phi: String,
    pub f: String,
    pub theta: Vec<String>,
    pub ordering: Ordering,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub tool_version: String,
    pub command: Command,
    pub inputs: Inputs,
    pub verdict: Option<String>,
    pub seed: Option<u64>,
    pub sampler: Option<SamplerConfig>,
    pub results: Value,
    #[serde(skip)]
    pub text: Vec<String>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, CliError> {
        serde_json::from_str(s).map_err(|e| CliError::Input(e.to_string()))
    }

    /// Human-readable summary.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.tool, self.command.name());
        if let Some(v) = &self.verdict {
            let _ = writeln!(out, "verdict: {v}");
        }
        for line in &self.text {
            let _ = writeln!(out, "{line}");
        }
        if let Some(s) = self.seed {
            let _ = writeln!(out, "seed: {s}");
        }
        out
    }
}

struct Outcome {
    verdict: Option<String>,
    results: Value,
    text: Vec<String>,
    sampler: Option<SamplerConfig>,
}

impl Outcome {
    fn plain(verdict: Option<String>, results: Value, text: Vec<String>) -> Self {
        Outcome { verdict, results, text, sampler: None }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn sampler(pf: &ProblemFile, flags: &Flags) -> Result<SamplerConfig, CliError> {
    let mut cfg = pf.sampler();
    if let Some(s) = flags.seed {
        cfg.seed = s;
    }
    if let Some(r) = flags.radii {
        cfg.radii = r;
    }
    if let Some(f) = flags.radius_factor {
        cfg.radius_factor = f;
    }
    if let Some(p) = flags.points_per_radius {
        cfg.points_per_radius = p;
    }
    if let Some(t) = &flags.t_values {
        cfg.t_values = t.clone();
    }
    if let Some(t) = flags.tolerance {
        cfg.tolerance = t;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn numeric_text(label: &str, r: &NumericReport) -> String {
    format!(
        "{label}: {} (max {:.3e}, growth {:?}, spread {:.3e}, {} samples)",
        if r.bounded { "bounded" } else { "unbounded" },
        r.max_ratio,
        r.growth.iter().map(|g| (g * 1e4).round() / 1e4).collect::<Vec<_>>(),
        r.spread,
        r.samples
    )
}

fn rigidity_options(pf: &ProblemFile, flags: &Flags) -> Result<RigidityOptions, CliError> {
    let mut asserted = pf.options.asserted.clone();
    asserted.extend(flags.asserted.iter().cloned());
    let kill_sets = if !flags.kill.is_empty() {
        Some(flags.kill.iter().map(|k| pf.resolve(k)).collect::<Result<Vec<_>, _>>()?)
    } else {
        match &pf.options.kill_sets {
            Some(ks) => Some(ks.iter().map(|k| pf.resolve(k)).collect::<Result<Vec<_>, _>>()?),
            None => None,
        }
    };
    let polar_choice = match &pf.options.polar_choice {
        Some(c) if c.contains(&0) => return Err(CliError::Input("polar_choice indices are 1-based".into())),
        Some(c) => Some(c.iter().map(|i| i - 1).collect()),
        None => None,
    };
    Ok(RigidityOptions { polar_choice, kill_sets, asserted, skip_restriction: false })
}

fn run_derlog(prob: &DeformationProblem) -> Outcome {
    let dl = prob.derlog();
    let info = dl.info();
    let text = info.iter().enumerate().map(|(i, g)| format!("eta_{} = {}   degree {}", i + 1, g.field, g.degree)).collect();
    Outcome::plain(
        None,
        json!({
            "phi_degree": dl.phi_degree(),
            "generators": info,
            "degrees": dl.degrees(),
            "stratum_dim": dl.stratum_dim(),
        }),
        text,
    )
}

fn run_mubr(prob: &DeformationProblem) -> Outcome {
    let r = invariant_report(prob);
    let show = |v: Option<u64>| v.map_or("infinite".to_string(), |v| v.to_string());
    let text = vec![
        format!("mu_BR = {}", show(r.mu_br)),
        format!("s = {}", r.s),
        format!("R_X-codimension = {} (direct {})", show(r.rx_cod), show(r.rx_cod_direct)),
    ];
    Outcome::plain(None, to_value(&r), text)
}

fn run_fil(prob: &DeformationProblem) -> Result<Outcome, CliError> {
    let r = degree_criterion(prob)?;
    let all = r.verdicts.iter().all(|v| v.trivial);
    let text = r
        .verdicts
        .iter()
        .map(|v| {
            format!(
                "fil({}) = {} vs threshold {}: {}",
                v.theta,
                v.fil,
                v.threshold,
                if v.trivial { "trivial" } else { "inconclusive" }
            )
        })
        .collect();
    Ok(Outcome::plain(Some(if all { "trivial" } else { "inconclusive" }.into()), to_value(&r), text))
}

fn run_good_def(prob: &DeformationProblem) -> Outcome {
    let g = good_deformation_check(prob);
    let mut text = vec![format!("good deformation: {}", g.good)];
    text.extend(g.notes.iter().cloned());
    Outcome::plain(Some(if g.good { "good" } else { "splits" }.into()), to_value(&g), text)
}

fn run_analytic(prob: &DeformationProblem) -> Outcome {
    if let Some(i) = unit_field_precheck(prob) {
        let field = prob.derlog().generators()[i].to_string();
        return Outcome::plain(
            Some("trivial".into()),
            json!({ "route": "unit-field", "field_index": i + 1, "field": field }),
            vec![format!("df(eta_{}) does not vanish at 0", i + 1)],
        );
    }
    let r = analytic_triviality_check(prob);
    let fields: Vec<String> = r.fields.iter().map(|f| f.to_string()).collect();
    let fixed: Vec<Value> = r.fixed_t.iter().map(|(t, ok)| json!({ "t": t.to_string(), "member": ok })).collect();
    match &r.verdict {
        AnalyticVerdict::Trivial { unit, cofactors } => Outcome::plain(
            Some("trivial".into()),
            json!({
                "route": "membership",
                "fields": fields,
                "unit": unit.to_string(),
                "cofactors": cofactors.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            }),
            vec![format!("dF/dt is in dF(Theta_X^0) up to the unit {unit}")],
        ),
        AnalyticVerdict::NotInTangentSpace => Outcome::plain(
            Some("not-in-tangent-space".into()),
            json!({ "route": "membership", "fields": fields, "fixed_t": fixed }),
            vec![format!("{} is not in dF(Theta_X^0)", prob.dfdt())],
        ),
    }
}

fn run_check_trivial(prob: &DeformationProblem, cfg: SamplerConfig) -> Result<Outcome, CliError> {
    let mut out = run_fil(prob)?;
    let mut results = json!({ "criterion": out.results.take() });
    if out.verdict.as_deref() == Some("inconclusive") {
        let sup = numeric_sup_hypothesis(prob, &cfg)?;
        out.text.push(numeric_text("sup-hypothesis ratio", &sup));
        results["sup_hypothesis"] = to_value(&sup);
        out.sampler = Some(cfg);
    }
    out.results = results;
    Ok(out)
}

fn run_certificate(pf: &ProblemFile, prob: &DeformationProblem, cap: u32, cfg: SamplerConfig) -> Result<Outcome, CliError> {
    let cert = match &pf.options.exponents {
        Some(e) => build_certificate_with(prob, e),
        None => build_certificate(prob, cap),
    };
    let Some(cert) = cert else {
        let why = match &pf.options.exponents {
            Some(e) => format!("some x_i^m_i dF/dt is not in the module for exponents {e:?}"),
            None => format!("no exponent up to {cap} works for some variable"),
        };
        return Ok(Outcome::plain(Some("not-found".into()), json!({ "reason": why }), vec![why]));
    };
    let field = build_certificate_field(prob, &cert);
    let lip = numeric_lipschitz_check(&field, &cfg)?;
    let names = prob.ctx().names();
    let multipliers: Vec<Value> = cert
        .multipliers
        .iter()
        .map(|m| json!({ "variable": names[m.var], "exponent": m.exponent, "unit": m.unit.to_string() }))
        .collect();
    let text = vec![
        format!("rho = {}", cert.rho),
        format!("exponents {:?}, polynomial: {}", cert.exponents(), cert.is_polynomial()),
        format!("identity verified: {}", cert.verified),
        numeric_text("Lipschitz quotients", &lip),
    ];
    let verdict = if !cert.verified {
        "unverified"
    } else if lip.bounded {
        "certified"
    } else {
        "certified-unbounded"
    };
    Ok(Outcome {
        verdict: Some(verdict.into()),
        results: json!({
            "rho": cert.rho.to_string(),
            "denominator": cert.denominator.to_string(),
            "polynomial": cert.is_polynomial(),
            "exponents": cert.exponents(),
            "multipliers": multipliers,
            "fields": cert.fields.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
            "alphas": cert.alphas.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
            "verified": cert.verified,
            "lipschitz": to_value(&lip),
        }),
        text,
        sampler: Some(cfg),
    })
}

fn conclusion_name(c: Conclusion) -> String {
    match to_value(&c) {
        Value::String(s) => s,
        _ => unreachable!(),
    }
}

fn run_rigidity(prob: &DeformationProblem, opts: &RigidityOptions) -> Result<Outcome, CliError> {
    let v = rigidity_verdict(prob, opts)?;
    let mut text: Vec<String> = v.hypotheses.iter().map(|h| format!("{:<22} {:?}: {}", h.name, h.status, h.detail)).collect();
    text.push(format!("route: {}", v.route));
    text.push(format!(
        "scalar constant: {}",
        v.scalar_constant.as_ref().map_or("none".to_string(), |c| c.to_string())
    ));
    text.extend(v.notes.iter().cloned());
    Ok(Outcome::plain(Some(conclusion_name(v.conclusion)), to_value(&v), text))
}

fn run_restrict(pf: &ProblemFile, prob: &DeformationProblem, opts: &RigidityOptions) -> Result<Outcome, CliError> {
    let Some(sets) = &opts.kill_sets else {
        return Err(CliError::Input("restrict needs a kill set (--kill or options.kill_sets)".into()));
    };
    let sub_opts = RigidityOptions { asserted: opts.asserted.clone(), skip_restriction: true, ..Default::default() };
    let mut entries = Vec::new();
    let mut text = Vec::new();
    let mut best: Option<Conclusion> = None;
    for kill in sets {
        let r = restrict_to_plane(prob, kill)?;
        let names: Vec<&str> = r.kill.iter().map(|&k| pf.variables[k].as_str()).collect();
        text.push(format!("kill {{{}}}: generic = {}", names.join(","), r.is_generic()));
        text.extend(r.hypotheses.iter().map(|h| format!("  {:<20} {:?}: {}", h.name, h.status, h.detail)));
        let verdict = match (&r.problem, r.is_generic()) {
            (Some(p), true) => Some(rigidity_verdict(p, &sub_opts)?),
            _ => None,
        };
        if let Some(v) = &verdict {
            text.push(format!("  restricted verdict: {}", conclusion_name(v.conclusion)));
            best = match (best, v.conclusion) {
                (_, Conclusion::NotStronglyTrivial) | (None, _) => Some(v.conclusion),
                (b, _) => b,
            };
        }
        entries.push(json!({
            "kill": names,
            "generic": r.is_generic(),
            "hypotheses": to_value(&r.hypotheses),
            "verdict": verdict.as_ref().map(to_value),
        }));
    }
    Ok(Outcome::plain(best.map(conclusion_name), json!({ "restrictions": entries }), text))
}

/// Runs `cmd` on a parsed problem file. Verdicts are part of the report;
/// errors are reserved for invalid input or unmet preconditions.
pub fn execute(cmd: Command, pf: &ProblemFile, flags: &Flags) -> Result<Report, CliError> {
    let ordering = flags.ordering.or(pf.options.ordering).unwrap_or_default();
    let prob = pf.problem(ordering)?;
    let cap = flags.cap.or(pf.options.exponent_cap).unwrap_or(DEFAULT_CAP);
    let out = match cmd {
        Command::Derlog => run_derlog(&prob),
        Command::Mubr => run_mubr(&prob),
        Command::Fil => run_fil(&prob)?,
        Command::GoodDef => run_good_def(&prob),
        Command::Analytic => run_analytic(&prob),
        Command::CheckTrivial => run_check_trivial(&prob, sampler(pf, flags)?)?,
        Command::Certificate => run_certificate(pf, &prob, cap, sampler(pf, flags)?)?,
        Command::CheckRigidity => run_rigidity(&prob, &rigidity_options(pf, flags)?)?,
        Command::Restrict => run_restrict(pf, &prob, &rigidity_options(pf, flags)?)?,
    };
    Ok(Report {
        tool: env!("CARGO_PKG_NAME").into(),
        tool_version: env!("CARGO_PKG_VERSION").into(),
        command: cmd,
        inputs: Inputs {
            variables: pf.variables.clone(),
            weights: pf.weights.clone(),
            phi: prob.derlog().phi().to_string(),
            f: prob.f().to_string(),
            theta: prob.thetas().iter().map(|t| t.to_string()).collect(),
            ordering,
        },
        verdict: out.verdict,
        seed: out.sampler.as_ref().map(|s| s.seed),
        sampler: out.sampler,
        results: out.results,
        text: out.text,
    })
}
