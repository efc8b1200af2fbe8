//! Bruce-Roberts number, R_X-codimension, good deformations and the
//! infinitesimal analytic triviality test.

use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::derlog::Derlog;
use crate::error::{Error, Result};
use crate::field::VectorField;
use crate::groebner::{local_membership, local_radical_membership, quotient_dim, MonomialOrdering};
use crate::poly::{Poly, Rational, VarContext};
use crate::weights::{is_weighted_homogeneous, WeightSystem};

/// A one-parameter deformation `F = f + t * sum theta` of `f` on `X`.
#[derive(Debug, Clone)]
pub struct DeformationProblem {
    ctx: Arc<VarContext>,
    derlog: Derlog,
    f: Poly,
    thetas: Vec<Poly>,
    big_f: Poly,
    dfdt: Poly,
    lex: bool,
}

fn check_plain(p: &Poly, what: &str) -> Result<()> {
    if !p.is_holomorphic() || p.ctx().t_slot().is_some_and(|s| p.involves(s)) {
        return Err(Error::Context(format!("{what} must not involve t or conjugates")));
    }
    Ok(())
}

impl DeformationProblem {
    pub fn new(derlog: &Derlog, f: &Poly, thetas: &[Poly]) -> Result<Self> {
        let ctx = derlog.ctx().with_flags(false, true);
        if f.ctx().names() != ctx.names() || thetas.iter().any(|t| t.ctx().names() != ctx.names()) {
            return Err(Error::Context("f, theta and phi use different variables".into()));
        }
        check_plain(f, "f")?;
        for t in thetas {
            check_plain(t, "theta")?;
        }
        let f = f.lift(&ctx);
        let thetas: Vec<Poly> = thetas.iter().map(|t| t.lift(&ctx)).collect();
        if !f.constant_term().is_zero() || thetas.iter().any(|t| !t.constant_term().is_zero()) {
            return Err(Error::Hypothesis("F(0, t) must vanish".into()));
        }
        let dfdt = thetas.iter().fold(Poly::zero(&ctx), |acc, t| &acc + t);
        let big_f = &f + &(&Poly::param(&ctx) * &dfdt);
        Ok(DeformationProblem { derlog: derlog.lift(&ctx), ctx, f, thetas, big_f, dfdt, lex: false })
    }

    pub fn ctx(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    pub fn derlog(&self) -> &Derlog {
        &self.derlog
    }

    pub fn weights(&self) -> &WeightSystem {
        self.derlog.weights()
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn thetas(&self) -> &[Poly] {
        &self.thetas
    }

    pub fn big_f(&self) -> &Poly {
        &self.big_f
    }

    /// `dF/dt = sum theta`.
    pub fn dfdt(&self) -> &Poly {
        &self.dfdt
    }

    /// Same `X` and `f`, deformed by a single `theta`.
    pub fn with_thetas(&self, thetas: &[Poly]) -> Result<Self> {
        Ok(DeformationProblem::new(&self.derlog, &self.f, thetas)?.with_lex(self.lex))
    }

    /// Use lex instead of weighted grevlex for membership computations.
    pub fn with_lex(mut self, lex: bool) -> Self {
        self.lex = lex;
        self
    }

    /// `dF(eta)` for each field.
    pub fn apply_all(&self, fields: &[VectorField]) -> Vec<Poly> {
        fields.iter().map(|g| g.apply(&self.big_f)).collect()
    }

    /// Weighted degree of `f`, if weighted homogeneous.
    pub fn f_degree(&self) -> Option<i64> {
        is_weighted_homogeneous(&self.f, self.weights()).ok().flatten()
    }

    pub fn ordering(&self) -> MonomialOrdering {
        if self.lex {
            return MonomialOrdering::lex_for(&self.ctx);
        }
        MonomialOrdering::wgrevlex_for(&self.ctx, self.weights())
    }
}

fn holomorphic_ctx(dl: &Derlog) -> Arc<VarContext> {
    dl.ctx().with_flags(false, false)
}

/// `dim O_n / <df(eta_1), ..., df(eta_r)>`; `None` when infinite.
pub fn bruce_roberts_number(f: &Poly, dl: &Derlog) -> Result<Option<u64>> {
    let ctx = holomorphic_ctx(dl);
    let f = f.lift(&ctx);
    let gens: Vec<Poly> = dl.generators().iter().map(|g| VectorField::new(&ctx, g.components().to_vec()).unwrap().apply(&f)).collect();
    quotient_dim(&gens, &MonomialOrdering::wgrevlex_for(&ctx, dl.weights()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Codimension {
    /// `mu_BR + s - 1`.
    pub formula: Option<u64>,
    /// `dim m_n / df(Theta_X^0)` computed directly, when available.
    pub direct: Option<u64>,
    pub notes: Vec<String>,
}

/// The R_X-codimension of `f`, by formula and directly.
pub fn rx_codimension(f: &Poly, dl: &Derlog) -> Result<Codimension> {
    let mu = bruce_roberts_number(f, dl)?;
    let s = dl.stratum_dim() as u64;
    let formula = mu.map(|m| m + s - 1);
    let ctx = holomorphic_ctx(dl);
    let f = f.lift(&ctx);
    let gens: Vec<Poly> = dl
        .vanishing_generators()
        .iter()
        .map(|g| VectorField::new(&ctx, g.components().to_vec()).unwrap().apply(&f))
        .collect();
    let mut notes = Vec::new();
    let direct = match quotient_dim(&gens, &MonomialOrdering::wgrevlex_for(&ctx, dl.weights())) {
        Ok(d) => d.map(|d| d - 1),
        Err(e) => {
            notes.push(format!("direct computation unavailable: {e}"));
            None
        }
    };
    if let (Some(a), Some(b)) = (formula, direct) {
        if a != b {
            notes.push(format!("formula {a} disagrees with direct value {b}"));
        }
    }
    Ok(Codimension { formula, direct, notes })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoodDeformation {
    pub good: bool,
    /// Coordinates that do not vanish on the germ of `C(F)`.
    pub failing: Vec<String>,
    pub notes: Vec<String>,
}

/// `C(F) = {dF(eta_i) = 0}` equals the t-axis near the origin: every
/// coordinate lies in the radical of `<dF(eta_i)>` in the local ring.
pub fn good_deformation_check(prob: &DeformationProblem) -> GoodDeformation {
    let gens = prob.apply_all(prob.derlog().generators());
    let ctx = prob.ctx();
    let failing: Vec<String> = (0..ctx.n())
        .filter(|&i| !local_radical_membership(&Poly::var(ctx, i), &gens))
        .map(|i| ctx.names()[i].clone())
        .collect();
    let mut notes = vec!["decided in the local ring at the origin (saturation)".to_string()];
    if !jointly_quasi_homogeneous(prob) {
        notes.push("F is not jointly weighted homogeneous; result is germ-level only".into());
    }
    GoodDeformation { good: failing.is_empty(), failing, notes }
}

fn jointly_quasi_homogeneous(prob: &DeformationProblem) -> bool {
    is_weighted_homogeneous(prob.big_f(), prob.weights()).ok().flatten().is_some()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnalyticVerdict {
    /// `unit * dF/dt = sum cofactors_i dF(eta0_i)` with `unit(0) != 0`.
    Trivial { unit: Poly, cofactors: Vec<Poly> },
    NotInTangentSpace,
}

#[derive(Debug, Clone)]
pub struct AnalyticReport {
    pub verdict: AnalyticVerdict,
    /// Generators of `Theta_X^0` used.
    pub fields: Vec<VectorField>,
    /// Per fixed `t`, whether membership holds there.
    pub fixed_t: Vec<(Rational, bool)>,
}

impl AnalyticReport {
    pub fn is_trivial(&self) -> bool {
        matches!(self.verdict, AnalyticVerdict::Trivial { .. })
    }
}

/// Tests `dF/dt ∈ dF(Theta_X^0)` in the local ring at the origin, treating
/// `t` as a variable. When this fails, membership at a few fixed values of
/// `t` is reported as a diagnostic.
pub fn analytic_triviality_check(prob: &DeformationProblem) -> AnalyticReport {
    let fields = prob.derlog().vanishing_generators();
    let gens = prob.apply_all(&fields);
    let ord = prob.ordering();
    let verdict = match local_membership(prob.dfdt(), &gens, &ord) {
        Some(w) => AnalyticVerdict::Trivial { unit: w.unit, cofactors: w.cofactors },
        None => AnalyticVerdict::NotInTangentSpace,
    };
    let fixed_t = if matches!(verdict, AnalyticVerdict::NotInTangentSpace) {
        let ts = prob.ctx().t_slot().unwrap();
        [(0, 1), (1, 2), (1, 1)]
            .iter()
            .map(|&(p, q)| {
                let t = Rational::new(p.into(), q.into());
                let g: Vec<Poly> = gens.iter().map(|g| g.substitute(ts, &t)).filter(|g| !g.is_zero()).collect();
                let ok = !g.is_empty() && local_membership(prob.dfdt(), &g, &ord).is_some();
                (t, ok)
            })
            .collect()
    } else {
        Vec::new()
    };
    AnalyticReport { verdict, fields, fixed_t }
}

/// A generator `eta` with `df(eta)(0) != 0` makes every deformation
/// analytically trivial; returns the first such index.
pub fn unit_field_precheck(prob: &DeformationProblem) -> Option<usize> {
    prob.derlog().generators().iter().position(|g| !g.apply(prob.f()).constant_term().is_zero())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub mu_br: Option<u64>,
    pub s: usize,
    pub rx_cod: Option<u64>,
    pub rx_cod_direct: Option<u64>,
    pub good_deformation: Option<bool>,
    pub notes: Vec<String>,
}

pub fn invariant_report(prob: &DeformationProblem) -> InvariantReport {
    let dl = prob.derlog();
    let mut notes = Vec::new();
    let (mu_br, rx_cod, rx_cod_direct) = match rx_codimension(prob.f(), dl) {
        Ok(c) => {
            notes.extend(c.notes);
            (bruce_roberts_number(prob.f(), dl).ok().flatten(), c.formula, c.direct)
        }
        Err(e) => {
            notes.push(format!("mu_BR unavailable: {e}"));
            (None, None, None)
        }
    };
    let good = good_deformation_check(prob);
    notes.extend(good.notes.iter().cloned());
    InvariantReport { mu_br, s: dl.stratum_dim(), rx_cod, rx_cod_direct, good_deformation: Some(good.good), notes }
}
