use std::sync::Arc;

use crate::field::VectorField;
use crate::groebner::{local_membership, MonomialOrdering};
use crate::invariants::DeformationProblem;
use crate::poly::{Poly, VarContext};

/// `unit * x_var^exponent * dF/dt = sum_j cofactors_j dF(eta_j)` with
/// `unit(0) != 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multiplier {
    pub var: usize,
    pub exponent: u32,
    pub unit: Poly,
    pub cofactors: Vec<Poly>,
}

/// A control function `rho = sum |x_i|^(2 m_i)` and numerators `alpha_j`
/// such that `D rho dF/dt = sum_j alpha_j dF(eta_j)`, where `D` is the
/// product of the local units (a unit at the origin, often `1`).
#[derive(Debug, Clone)]
pub struct Certificate {
    ctx: Arc<VarContext>,
    pub rho: Poly,
    pub denominator: Poly,
    pub multipliers: Vec<Multiplier>,
    pub alphas: Vec<Poly>,
    pub fields: Vec<VectorField>,
    pub verified: bool,
}

impl Certificate {
    /// Context with conjugates and `t`, where `rho` and the `alphas` live.
    pub fn ctx(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    /// `D rho dF/dt - sum alpha_j dF(eta_j)`, exactly.
    pub fn residual(&self, prob: &DeformationProblem) -> Poly {
        let big_f = prob.big_f().lift(&self.ctx);
        let lhs = &(&self.denominator * &self.rho) * &prob.dfdt().lift(&self.ctx);
        self.alphas
            .iter()
            .zip(&self.fields)
            .fold(lhs, |acc, (a, eta)| &acc - &(a * &eta.apply(&big_f)))
    }

    pub fn verify(&self, prob: &DeformationProblem) -> bool {
        self.residual(prob).is_zero()
    }

    pub fn exponents(&self) -> Vec<u32> {
        self.multipliers.iter().map(|m| m.exponent).collect()
    }

    /// Whether the denominator is identically one.
    pub fn is_polynomial(&self) -> bool {
        self.denominator == Poly::one(&self.ctx)
    }
}

fn member(prob: &DeformationProblem, p: &Poly, gens: &[Poly], ord: &MonomialOrdering) -> Option<(Poly, Vec<Poly>)> {
    local_membership(p, gens, ord).map(|w| (w.unit.lift(prob.ctx()), w.cofactors))
}

fn assemble(prob: &DeformationProblem, multipliers: Vec<Multiplier>) -> Certificate {
    let ctx = prob.ctx().with_flags(true, true);
    let fields: Vec<VectorField> = prob
        .derlog()
        .generators()
        .iter()
        .map(|g| VectorField::new(&ctx, g.components().iter().map(|c| c.lift(&ctx)).collect()).unwrap())
        .collect();
    let units: Vec<Poly> = multipliers.iter().map(|m| m.unit.lift(&ctx)).collect();
    let denominator = units.iter().fold(Poly::one(&ctx), |acc, u| &acc * u);
    let mut rho = Poly::zero(&ctx);
    let mut alphas = vec![Poly::zero(&ctx); fields.len()];
    for (i, m) in multipliers.iter().enumerate() {
        let x = Poly::var(&ctx, m.var).pow(m.exponent);
        let xb = Poly::conj_var(&ctx, m.var).pow(m.exponent);
        rho = &rho + &(&x * &xb);
        let others = units
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i)
            .fold(xb, |acc, (_, u)| &acc * u);
        for (a, b) in alphas.iter_mut().zip(&m.cofactors) {
            *a = &*a + &(&others * &b.lift(&ctx));
        }
    }
    let mut cert = Certificate { ctx, rho, denominator, multipliers, alphas, fields, verified: false };
    cert.verified = cert.verify(prob);
    cert
}

/// Searches `x_i^m_i dF/dt ∈ <dF(eta_j)>` in the local ring at the origin,
/// independently per variable with `m_i` ascending from 1 to `cap`. When
/// `dF/dt` is itself a member the certificate has `rho = 1`.
pub fn build_certificate(prob: &DeformationProblem, cap: u32) -> Option<Certificate> {
    let gens = prob.apply_all(prob.derlog().generators());
    let ord = prob.ordering();
    let ctx = prob.ctx();
    if let Some((unit, cofactors)) = member(prob, prob.dfdt(), &gens, &ord) {
        let dctx = ctx.with_flags(true, true);
        let fields = prob
            .derlog()
            .generators()
            .iter()
            .map(|g| VectorField::new(&dctx, g.components().iter().map(|c| c.lift(&dctx)).collect()).unwrap())
            .collect();
        let mut cert = Certificate {
            rho: Poly::one(&dctx),
            denominator: unit.lift(&dctx),
            multipliers: Vec::new(),
            alphas: cofactors.iter().map(|c| c.lift(&dctx)).collect(),
            fields,
            ctx: dctx,
            verified: false,
        };
        cert.verified = cert.verify(prob);
        return Some(cert);
    }
    let mut multipliers = Vec::new();
    for i in 0..ctx.n() {
        let x = Poly::var(ctx, i);
        let found = (1..=cap).find_map(|m| {
            let p = &x.pow(m) * prob.dfdt();
            member(prob, &p, &gens, &ord).map(|(unit, cofactors)| Multiplier { var: i, exponent: m, unit, cofactors })
        });
        multipliers.push(found?);
    }
    Some(assemble(prob, multipliers))
}

/// Certificate with prescribed exponents `m_i`; `None` if some
/// `x_i^m_i dF/dt` is not in the local module.
pub fn build_certificate_with(prob: &DeformationProblem, exponents: &[u32]) -> Option<Certificate> {
    let ctx = prob.ctx();
    if exponents.len() != ctx.n() || exponents.contains(&0) {
        return None;
    }
    let gens = prob.apply_all(prob.derlog().generators());
    let ord = prob.ordering();
    let mut multipliers = Vec::new();
    for (i, &m) in exponents.iter().enumerate() {
        let p = &Poly::var(ctx, i).pow(m) * prob.dfdt();
        let (unit, cofactors) = member(prob, &p, &gens, &ord)?;
        multipliers.push(Multiplier { var: i, exponent: m, unit, cofactors });
    }
    Some(assemble(prob, multipliers))
}
