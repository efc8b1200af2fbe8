//! Polar curves, the hypotheses of the rigidity theorems, restriction to
//! generic planes and the resulting verdicts.

use std::sync::Arc;

use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::derlog::{derlog_generators, euler_field, module_equal, Derlog};
use crate::error::{Error, Result};
use crate::field::{projection_map, VectorField};
use crate::groebner::{
    local_radical_membership, quotient_dim, saturation, squarefree_decomposition, MonomialOrdering,
    SquarefreeDecomposition,
};
use crate::invariants::{bruce_roberts_number, DeformationProblem};
use crate::poly::{Poly, Rational, VarContext};
use crate::weights::{is_weighted_homogeneous, WeightSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    UserAsserted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl Hypothesis {
    fn new(name: &str, ok: bool, detail: impl Into<String>) -> Self {
        Hypothesis {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            detail: detail.into(),
        }
    }

    pub fn holds(&self) -> bool {
        self.status != Status::Fail
    }
}

fn apply_assertions(hyps: &mut [Hypothesis], asserted: &[String]) {
    for h in hyps {
        if h.status == Status::Fail && asserted.contains(&h.name) {
            h.status = Status::UserAsserted;
        }
    }
}

fn all_hold(hyps: &[Hypothesis]) -> bool {
    hyps.iter().all(Hypothesis::holds)
}

#[derive(Debug, Clone)]
pub struct PolarCurve {
    /// Indices of the generators of `Theta_X` used.
    pub field_choice: Vec<usize>,
    /// `phi` followed by `dF(eta_i)` for the chosen fields.
    pub ideal_gens: Vec<Poly>,
    pub squarefree_data: Vec<SquarefreeDecomposition>,
}

/// Index of the generator proportional to the Euler field, if any.
pub fn euler_index(dl: &Derlog) -> Option<usize> {
    let e = euler_field(dl.ctx(), dl.weights());
    let (k, ek) = e.components().iter().enumerate().find(|(_, c)| !c.is_zero())?;
    let (m, c) = ek.lex_leading()?;
    dl.generators().iter().position(|g| {
        let r = g.component(k).coeff(m) / c;
        !r.is_zero() && g.sub(&e.scale_rational(&r)).is_zero()
    })
}

/// `phi` together with `dF(eta_i)` for `n - 2` generators. The default
/// choice takes the non-Euler generators of lowest degree.
pub fn polar_curve(prob: &DeformationProblem, choice: Option<&[usize]>) -> Result<PolarCurve> {
    let dl = prob.derlog();
    let n = prob.ctx().n();
    let need = n.saturating_sub(2);
    let euler = euler_index(dl);
    let field_choice = match choice {
        Some(c) => {
            let mut seen = c.to_vec();
            seen.sort_unstable();
            seen.dedup();
            if c.len() != need || seen.len() != need || c.iter().any(|&i| i >= dl.len() || Some(i) == euler) {
                return Err(Error::InvalidIndex(format!(
                    "polar curve needs {need} distinct non-Euler generator indices below {}",
                    dl.len()
                )));
            }
            c.to_vec()
        }
        None => {
            let mut idx: Vec<usize> = (0..dl.len()).filter(|&i| Some(i) != euler).collect();
            idx.sort_by_key(|&i| (dl.degrees()[i], i));
            if idx.len() < need {
                return Err(Error::InvalidIndex(format!("only {} non-Euler generators", idx.len())));
            }
            idx.truncate(need);
            idx
        }
    };
    let mut ideal_gens = vec![dl.phi().clone()];
    for &i in &field_choice {
        ideal_gens.push(dl.generators()[i].apply(prob.big_f()));
    }
    let squarefree_data = ideal_gens
        .iter()
        .map(|g| {
            squarefree_decomposition(g).unwrap_or_else(|_| SquarefreeDecomposition {
                unit: Rational::zero(),
                parts: Vec::new(),
            })
        })
        .collect();
    Ok(PolarCurve { field_choice, ideal_gens, squarefree_data })
}

fn jacobian(phi: &Poly) -> Vec<Poly> {
    (0..phi.ctx().n()).map(|i| phi.derivative(i)).filter(|g| !g.is_zero()).collect()
}

/// No branch of the polar curve off the singular locus of `X` lies in
/// `{x_m = 0}`: each saturation of the polar ideal by a partial of `phi`,
/// plus `x_m`, cuts out only the t-axis near the origin.
fn no_branch(prob: &DeformationProblem, pc: &PolarCurve, m: usize) -> (bool, String) {
    let ctx = prob.ctx();
    let xm = Poly::var(ctx, m);
    let jac = jacobian(prob.derlog().phi());
    let pieces: Vec<Vec<Poly>> = if jac.is_empty() {
        vec![pc.ideal_gens.clone()]
    } else {
        jac.iter().map(|g| saturation(&pc.ideal_gens, g)).collect()
    };
    for piece in pieces {
        let mut gens = piece;
        gens.push(xm.clone());
        for i in (0..ctx.n()).filter(|&i| i != m) {
            if !local_radical_membership(&Poly::var(ctx, i), &gens) {
                return (false, format!("a branch of the polar curve lies in {{{} = 0}}", ctx.names()[m]));
            }
        }
    }
    (true, format!("no polar branch in {{phi = 0, {} = 0}} off Sing(X)", ctx.names()[m]))
}

fn isolated_singularity(dl: &Derlog) -> Option<bool> {
    let ctx = dl.ctx().with_flags(false, false);
    let phi = dl.phi().lift(&ctx);
    let mut gens = jacobian(&phi);
    gens.push(phi.clone());
    let ord = MonomialOrdering::wgrevlex_for(&ctx, dl.weights());
    quotient_dim(&gens, &ord).ok().map(|d| d.is_some())
}

/// Non-Euler generator degrees compared with `deg(eta_e) = 0`.
fn degree_split(dl: &Derlog) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
    let euler = euler_index(dl);
    let (mut below, mut equal, mut above) = (Vec::new(), Vec::new(), Vec::new());
    for (i, &d) in dl.degrees().iter().enumerate() {
        if Some(i) == euler {
            continue;
        }
        match d.cmp(&0) {
            std::cmp::Ordering::Less => below.push(i),
            std::cmp::Ordering::Equal => equal.push(i),
            std::cmp::Ordering::Greater => above.push(i),
        }
    }
    (below, equal, above)
}

/// Statuses for the weight, stratum, degree, polar-branch, Cohen-Macaulay
/// and homogeneity hypotheses. The coordinate of least weight plays the
/// role of the last coordinate; no variables are reordered.
pub fn genericity_checks(prob: &DeformationProblem, pc: &PolarCurve, asserted: &[String]) -> Vec<Hypothesis> {
    let dl = prob.derlog();
    let ws = prob.weights();
    let names = prob.ctx().names();
    let mut out = Vec::new();

    let min = ws.unique_min_index();
    out.push(match min {
        Some(m) => Hypothesis::new(
            "unique_min_weight",
            true,
            format!("{} has the unique least weight; order by weight {:?}", names[m], ws.descending_permutation()),
        ),
        None => Hypothesis::new("unique_min_weight", false, "no unique minimal weight"),
    });

    let s = dl.stratum_dim();
    out.push(Hypothesis::new("stratum_zero", s == 0, format!("s = {s}")));

    let (below, equal, above) = degree_split(dl);
    let degrees = format!("degrees {:?}", dl.degrees());
    out.push(if !below.is_empty() {
        Hypothesis::new("degree_regime", false, format!("{degrees}: generators of negative degree"))
    } else if equal.is_empty() {
        Hypothesis::new("degree_regime", true, format!("{degrees}: deg(eta_e) < deg(eta_i) for all i"))
    } else {
        Hypothesis::new(
            "degree_regime",
            true,
            format!("{degrees}: {} generator(s) share deg(eta_e), {} above", equal.len(), above.len()),
        )
    });

    out.push(match min {
        Some(m) => {
            let (ok, detail) = no_branch(prob, pc, m);
            Hypothesis::new("no_branch", ok, detail)
        }
        None => Hypothesis::new("no_branch", false, "undefined without a unique least weight"),
    });

    out.push(match isolated_singularity(dl) {
        Some(true) => Hypothesis::new("lc_cohen_macaulay", true, "phi has an isolated singularity"),
        Some(false) => Hypothesis::new("lc_cohen_macaulay", false, "phi has a non-isolated singularity; not decided"),
        None => Hypothesis::new("lc_cohen_macaulay", false, "singularity of phi could not be decided"),
    });

    let d = prob.f_degree();
    let theta_ok = prob.thetas().iter().all(|t| t.is_zero() || is_weighted_homogeneous(t, ws).ok().flatten() == d);
    out.push(Hypothesis::new(
        "family_homogeneous",
        d.is_some() && theta_ok && dl.phi_degree().is_some(),
        match d {
            Some(d) => format!("f of degree {d}"),
            None => "f is not weighted homogeneous".into(),
        },
    ));
    apply_assertions(&mut out, asserted);
    out
}

/// Every polar generator squarefree; returns the decompositions.
pub fn reducedness_check(pc: &PolarCurve) -> (bool, Vec<SquarefreeDecomposition>) {
    let ok = pc.ideal_gens.iter().zip(&pc.squarefree_data).all(|(g, s)| !g.is_zero() && s.is_squarefree());
    (ok, pc.squarefree_data.clone())
}

/// For every factor `s_k` of multiplicity `k >= 2` in `dF(eta_2)`,
/// `s_k^(k-1)` divides `[eta_2, eta_i0](F)`.
pub fn bracket_divisibility(prob: &DeformationProblem, eta2: usize, eta_i0: usize) -> Result<bool> {
    let gens = prob.derlog().generators();
    if eta2 >= gens.len() || eta_i0 >= gens.len() {
        return Err(Error::InvalidIndex(format!("generator index out of range 0..{}", gens.len())));
    }
    let p = gens[eta2].apply(prob.big_f());
    if p.is_zero() {
        return Ok(false);
    }
    let bracket = gens[eta2].lie_bracket(&gens[eta_i0]).apply(prob.big_f());
    let sq = squarefree_decomposition(&p)?;
    Ok(sq.parts.iter().filter(|(_, k)| *k >= 2).all(|(s, k)| s.pow(k - 1).divides(&bracket)))
}

/// `c` with `theta = c f`, if any.
pub fn scalar_multiple_check(theta: &Poly, f: &Poly) -> Option<Rational> {
    if theta.is_zero() {
        return Some(Rational::zero());
    }
    let (m, c) = f.lex_leading()?;
    let c = theta.coeff(m) / c;
    (*theta == f.scale(&c)).then_some(c)
}

#[derive(Debug, Clone)]
pub struct Restriction {
    pub kill: Vec<usize>,
    pub keep: Vec<usize>,
    pub problem: Option<DeformationProblem>,
    pub hypotheses: Vec<Hypothesis>,
}

impl Restriction {
    pub fn is_generic(&self) -> bool {
        self.problem.is_some() && all_hold(&self.hypotheses)
    }
}

fn standard_homogeneous(ps: &[&Poly]) -> bool {
    let mut degs = ps.iter().flat_map(|p| p.terms().map(|(m, _)| m.iter().sum::<u32>()));
    match degs.next() {
        Some(d) => degs.all(|e| e == d),
        None => true,
    }
}

/// `X_0 = X ∩ H` and `F_0 = F|_H` for `H = {x_k = 0, k ∈ kill}`, with the
/// genericity conditions on `H`.
pub fn restrict_to_plane(prob: &DeformationProblem, kill: &[usize]) -> Result<Restriction> {
    let ctx = prob.ctx();
    let n = ctx.n();
    let mut kill = kill.to_vec();
    kill.sort_unstable();
    kill.dedup();
    if kill.is_empty() || kill.len() + 2 > n || kill.iter().any(|&k| k >= n) {
        return Err(Error::InvalidIndex(format!("kill set must have 1..={} indices below {n}", n.saturating_sub(2))));
    }
    let keep: Vec<usize> = (0..n).filter(|i| !kill.contains(i)).collect();
    let hctx = ctx.with_flags(false, false);
    let sub: Arc<VarContext> = hctx.restrict(&keep)?;
    let map = projection_map(&hctx, &keep);
    let down = |p: &Poly| p.lift(&hctx).remap(&sub, &map);
    let phi0 = down(prob.derlog().phi());
    if phi0.is_zero() {
        return Err(Error::Hypothesis("the plane lies inside X".into()));
    }
    let ws0 = WeightSystem::new(keep.iter().map(|&i| prob.weights().weight(i)).collect())?;
    let f0 = down(prob.f());
    let thetas0: Vec<Poly> = prob.thetas().iter().map(down).collect();
    let mut hyps = Vec::new();

    let dl0 = match derlog_generators(&phi0, &ws0) {
        Ok(d) => {
            hyps.push(Hypothesis::new("phi0_reduced", true, format!("phi0 = {phi0}")));
            d
        }
        Err(e) => {
            hyps.push(Hypothesis::new("phi0_reduced", false, format!("phi0 = {phi0}: {e}")));
            return Ok(Restriction { kill, keep, problem: None, hypotheses: hyps });
        }
    };

    let projected: Vec<VectorField> = prob
        .derlog()
        .generators()
        .iter()
        .map(|g| VectorField::new(&hctx, g.components().iter().map(|c| c.lift(&hctx)).collect()).unwrap())
        .map(|g| g.project(&sub, &keep))
        .filter(|g| !g.is_zero())
        .collect();
    let eq = module_equal(&projected, dl0.generators())?;
    hyps.push(Hypothesis::new(
        "projection_equal",
        eq,
        if eq { "pi(Theta_X) = Theta_X0" } else { "pi(Theta_X) differs from Theta_X0" },
    ));

    let mut all: Vec<&Poly> = vec![&f0];
    all.extend(thetas0.iter());
    let homog = standard_homogeneous(&all);
    hyps.push(Hypothesis::new("f0_not_homogeneous", !homog, format!("F0 = {f0} + t*({})", thetas0.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" + "))));

    let mu = if f0.is_zero() { Ok(None) } else { bruce_roberts_number(&f0, &dl0) };
    hyps.push(match mu {
        Ok(Some(m)) => Hypothesis::new("mu_br_finite", true, format!("mu_BR(f0, X0) = {m}")),
        Ok(None) => Hypothesis::new("mu_br_finite", false, "mu_BR(f0, X0) is infinite"),
        Err(e) => Hypothesis::new("mu_br_finite", false, e.to_string()),
    });

    let lex = matches!(prob.ordering().kind(), crate::groebner::OrderKind::Lex);
    let problem = DeformationProblem::new(&dl0, &f0, &thetas0)?.with_lex(lex);
    Ok(Restriction { kill, keep, problem: Some(problem), hypotheses: hyps })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Conclusion {
    Rigid,
    NotStronglyTrivial,
    Inapplicable,
}

#[derive(Debug, Clone, Default)]
pub struct RigidityOptions {
    pub polar_choice: Option<Vec<usize>>,
    pub kill_sets: Option<Vec<Vec<usize>>>,
    pub asserted: Vec<String>,
    pub skip_restriction: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct RestrictionSummary {
    pub kill: Vec<String>,
    pub hypotheses: Vec<Hypothesis>,
    pub verdict: Option<Box<RigidityVerdict>>,
}

fn ser_rational<S: Serializer>(c: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match c {
        Some(c) => s.serialize_some(&c.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RigidityVerdict {
    pub conclusion: Conclusion,
    pub route: String,
    pub polar_choice: Vec<usize>,
    pub hypotheses: Vec<Hypothesis>,
    #[serde(serialize_with = "ser_rational")]
    pub scalar_constant: Option<Rational>,
    pub restrictions: Vec<RestrictionSummary>,
    pub notes: Vec<String>,
}

fn direct(prob: &DeformationProblem, opts: &RigidityOptions) -> Result<(RigidityVerdict, bool)> {
    let dl = prob.derlog();
    let n = prob.ctx().n();
    let pc = polar_curve(prob, opts.polar_choice.as_deref())?;
    let mut hyps = genericity_checks(prob, &pc, &opts.asserted);
    let (reduced, strata) = reducedness_check(&pc);
    let (_, equal, above) = degree_split(dl);
    let mut notes = Vec::new();
    let mut comps = false;
    if n == 3 {
        let eta2 = pc.field_choice[0];
        let ok = match equal.iter().find(|&&i| i != eta2) {
            Some(&i0) => bracket_divisibility(prob, eta2, i0)?,
            None => true,
        };
        comps = !reduced && ok;
        hyps.push(Hypothesis::new(
            "bracket_divisibility",
            ok,
            if ok { "strata of dF(eta_2) divide the bracket" } else { "a stratum of dF(eta_2) does not divide the bracket" },
        ));
    }
    let detail = strata
        .iter()
        .zip(&pc.ideal_gens)
        .map(|(s, g)| format!("{} max multiplicity {}", if g.is_zero() { "0".into() } else { g.to_string() }, s.max_multiplicity()))
        .collect::<Vec<_>>()
        .join("; ");
    let mut red = Hypothesis::new("polar_reduced", reduced || comps, detail);
    if comps {
        red.detail = format!("non-reduced, squarefree strata divide the bracket: {}", red.detail);
    }
    hyps.push(red);
    apply_assertions(&mut hyps, &opts.asserted);

    let c = scalar_multiple_check(prob.dfdt(), prob.f());
    let holds = all_hold(&hyps);
    let strict = equal.is_empty() && !above.is_empty();
    let conclusion = if !holds {
        Conclusion::Inapplicable
    } else if strict && c.is_none() {
        Conclusion::NotStronglyTrivial
    } else {
        Conclusion::Rigid
    };
    if holds && !strict {
        notes.push("some generator shares deg(eta_e); non-triviality is not concluded directly".into());
    }
    let verdict = RigidityVerdict {
        conclusion,
        route: "direct".into(),
        polar_choice: pc.field_choice,
        hypotheses: hyps,
        scalar_constant: c,
        restrictions: Vec::new(),
        notes,
    };
    Ok((verdict, holds))
}

fn kill_sets(n: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n >= 3 {
        rec(0, n, n - 2, &mut Vec::new(), &mut out);
    }
    out
}

/// Runs the direct theorems, then, unless non-triviality was already
/// concluded, restrictions to coordinate planes (user supplied or all of
/// them in lexicographic order) until one gives non-triviality.
pub fn rigidity_verdict(prob: &DeformationProblem, opts: &RigidityOptions) -> Result<RigidityVerdict> {
    let (mut verdict, _) = direct(prob, opts)?;
    if verdict.conclusion == Conclusion::NotStronglyTrivial || opts.skip_restriction {
        return Ok(verdict);
    }
    let names = prob.ctx().names();
    let sets = opts.kill_sets.clone().unwrap_or_else(|| kill_sets(prob.ctx().n()));
    let sub_opts = RigidityOptions { asserted: opts.asserted.clone(), skip_restriction: true, ..Default::default() };
    for kill in sets {
        let label: Vec<String> = kill.iter().filter_map(|&k| names.get(k).cloned()).collect();
        let r = match restrict_to_plane(prob, &kill) {
            Ok(r) => r,
            Err(e) => {
                verdict.notes.push(format!("kill {{{}}}: {e}", label.join(",")));
                continue;
            }
        };
        let generic = r.is_generic();
        let sub = match (&r.problem, generic) {
            (Some(p), true) => Some(rigidity_verdict(p, &sub_opts)?),
            _ => None,
        };
        let hit = sub.as_ref().is_some_and(|v| v.conclusion == Conclusion::NotStronglyTrivial);
        verdict.restrictions.push(RestrictionSummary { kill: label.clone(), hypotheses: r.hypotheses, verdict: sub.map(Box::new) });
        if hit {
            verdict.conclusion = Conclusion::NotStronglyTrivial;
            verdict.route = format!("restriction to {{{} = 0}}", label.join(" = "));
            verdict.scalar_constant = None;
            break;
        }
    }
    Ok(verdict)
}
