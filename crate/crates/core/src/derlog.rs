//! Logarithmic vector fields of a hypersurface `X = {phi = 0}`.

use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::VectorField;
use crate::groebner::{module_contains_all, squarefree_decomposition, syzygies, ModuleElement, MonomialOrdering};
use crate::linalg;
use crate::poly::{Poly, Rational, VarContext};
use crate::weights::{is_weighted_homogeneous, WeightSystem};

/// `sum_j w_j x_j d/dx_j`.
pub fn euler_field(ctx: &Arc<VarContext>, ws: &WeightSystem) -> VectorField {
    let comps = (0..ctx.n()).map(|j| Poly::var(ctx, j).scale(&Rational::from_integer(ws.weight(j).into()))).collect();
    VectorField::new(ctx, comps).expect("one component per variable")
}

/// The fields `eta_ij = d phi/dx_j d/dx_i - d phi/dx_i d/dx_j` for `i < j`.
pub fn hamiltonian_fields(phi: &Poly) -> Vec<((usize, usize), VectorField)> {
    let ctx = phi.ctx();
    let n = ctx.n();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut comps = vec![Poly::zero(ctx); n];
            comps[i] = phi.derivative(j);
            comps[j] = -&phi.derivative(i);
            out.push(((i, j), VectorField::new(ctx, comps).unwrap()));
        }
    }
    out
}

/// `eta(phi) ∈ <phi>`.
pub fn is_tangent(eta: &VectorField, phi: &Poly) -> bool {
    let v = eta.apply(&phi.lift(eta.ctx()));
    if phi.is_zero() {
        return v.is_zero();
    }
    v.div_exact(&phi.lift(eta.ctx())).is_some()
}

fn to_elements(fields: &[VectorField]) -> Vec<ModuleElement> {
    fields.iter().map(|f| ModuleElement::new(f.ctx(), f.components().to_vec())).collect()
}

/// Each list lies in the module generated by the other.
pub fn module_equal(a: &[VectorField], b: &[VectorField]) -> Result<bool> {
    let (ea, eb) = (to_elements(a), to_elements(b));
    Ok(module_contains_all(&ea, &eb)? && module_contains_all(&eb, &ea)?)
}

/// Whether `eta` lies in the module generated by `gens`.
pub fn module_member(eta: &VectorField, gens: &[VectorField]) -> Result<bool> {
    module_contains_all(&to_elements(std::slice::from_ref(eta)), &to_elements(gens))
}

/// Scales to integer coefficients with content one, making the first
/// printed coefficient positive.
pub fn normalize_field(eta: &VectorField) -> VectorField {
    let coeffs: Vec<&Rational> = eta.components().iter().flat_map(|c| c.terms().map(|(_, q)| q)).collect();
    if coeffs.is_empty() {
        return eta.clone();
    }
    let den = coeffs.iter().fold(num_bigint::BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let num = coeffs.iter().fold(num_bigint::BigInt::zero(), |acc, q| acc.gcd(&(q.numer() * (&den / q.denom()))));
    let mut scale = Rational::new(den, num);
    let first = eta
        .components()
        .iter()
        .find(|c| !c.is_zero())
        .map(|c| c.sorted_terms()[0].1.clone())
        .unwrap();
    if first.is_negative() {
        scale = -scale;
    }
    eta.scale_rational(&scale)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorInfo {
    pub field: String,
    pub degree: i64,
}

/// A generating set of `Theta_X`.
#[derive(Debug, Clone)]
pub struct Derlog {
    phi: Poly,
    weights: WeightSystem,
    homogeneous_degree: Option<i64>,
    generators: Vec<VectorField>,
    degrees: Vec<i64>,
}

impl Derlog {
    /// `Theta` of the whole space (`phi = 0`): generated by the partials.
    pub fn ambient(ctx: &Arc<VarContext>, ws: &WeightSystem) -> Derlog {
        let n = ctx.n();
        let generators: Vec<VectorField> = (0..n).map(|i| VectorField::partial(ctx, i)).collect();
        let degrees = (0..n).map(|i| -(ws.weight(i) as i64)).collect();
        Derlog { phi: Poly::zero(ctx), weights: ws.clone(), homogeneous_degree: None, generators, degrees }
    }

    pub fn phi(&self) -> &Poly {
        &self.phi
    }

    pub fn weights(&self) -> &WeightSystem {
        &self.weights
    }

    pub fn ctx(&self) -> &Arc<VarContext> {
        self.phi.ctx()
    }

    /// Weighted degree of `phi` when it is weighted homogeneous.
    pub fn phi_degree(&self) -> Option<i64> {
        self.homogeneous_degree
    }

    pub fn generators(&self) -> &[VectorField] {
        &self.generators
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn info(&self) -> Vec<GeneratorInfo> {
        self.generators
            .iter()
            .zip(&self.degrees)
            .map(|(g, &d)| GeneratorInfo { field: g.to_string(), degree: d })
            .collect()
    }

    /// Replaces the computed generators by `gens` after certifying that
    /// both generate the same module.
    pub fn with_generators(&self, gens: Vec<VectorField>) -> Result<Derlog> {
        let gens: Vec<VectorField> = gens
            .into_iter()
            .map(|g| VectorField::new(self.ctx(), g.components().to_vec()))
            .collect::<Result<_>>()?;
        if gens.iter().any(VectorField::is_zero) {
            return Err(Error::ZeroField);
        }
        if !module_equal(&gens, &self.generators)? {
            return Err(Error::Hypothesis("supplied generators do not generate Theta_X".into()));
        }
        let degrees = gens.iter().map(|g| g.fil(&self.weights).map(|f| f.finite().unwrap())).collect::<Result<_>>()?;
        Ok(Derlog { generators: gens, degrees, ..self.clone() })
    }

    /// Carries the generators into a context with the same variables and
    /// more slots (conjugates, parameter).
    pub fn lift(&self, ctx: &Arc<VarContext>) -> Derlog {
        Derlog {
            phi: self.phi.lift(ctx),
            generators: self
                .generators
                .iter()
                .map(|g| VectorField::new(ctx, g.components().to_vec()).unwrap())
                .collect(),
            ..self.clone()
        }
    }

    /// Constant parts `eta_i(0)` as rows.
    pub fn constant_parts(&self) -> Vec<Vec<Rational>> {
        self.generators.iter().map(VectorField::value_at_origin).collect()
    }

    /// Rank of the values of the generators at the origin.
    pub fn stratum_dim(&self) -> usize {
        linalg::rank(&self.constant_parts())
    }

    /// Generators of the fields vanishing at the origin: the first `s`
    /// generators with independent values at 0 are multiplied by every
    /// coordinate, and the remaining ones are corrected by a combination of
    /// those so that they vanish at 0.
    pub fn vanishing_generators(&self) -> Vec<VectorField> {
        let ctx = self.ctx();
        let consts = self.constant_parts();
        let mut pivots: Vec<usize> = Vec::new();
        let mut pivot_rows: Vec<Vec<Rational>> = Vec::new();
        for (i, c) in consts.iter().enumerate() {
            let mut trial = pivot_rows.clone();
            trial.push(c.clone());
            if linalg::rank(&trial) > pivot_rows.len() {
                pivots.push(i);
                pivot_rows = trial;
            }
        }
        let mut out = Vec::new();
        for &p in &pivots {
            for k in 0..ctx.n() {
                out.push(self.generators[p].scale(&Poly::var(ctx, k)));
            }
        }
        for (i, g) in self.generators.iter().enumerate() {
            if pivots.contains(&i) {
                continue;
            }
            let lambda = linalg::solve_combination(&pivot_rows, &consts[i]).expect("pivots span the constant parts");
            let mut h = g.clone();
            for (l, &p) in lambda.iter().zip(&pivots) {
                if !l.is_zero() {
                    h = h.sub(&self.generators[p].scale_rational(l));
                }
            }
            if !h.is_zero() {
                out.push(h);
            }
        }
        out
    }
}

fn sort_key(eta: &VectorField, ws: &WeightSystem) -> (i64, String) {
    (eta.fil(ws).ok().and_then(|f| f.finite()).unwrap_or(i64::MAX), eta.to_string())
}

/// Greedy minimal subset, in the given order, generating the same module.
fn prune(cands: Vec<VectorField>) -> Result<Vec<VectorField>> {
    let mut kept: Vec<VectorField> = Vec::new();
    for c in cands {
        if c.is_zero() || (!kept.is_empty() && module_member(&c, &kept)?) {
            continue;
        }
        kept.push(c);
    }
    Ok(kept)
}

/// Generators of `Theta_X` from the syzygies of
/// `(d phi/dx_1, ..., d phi/dx_n, phi)`. When `phi` is weighted homogeneous
/// for `ws`, generators are weighted homogeneous with the Euler field first
/// and the rest in ascending degree.
pub fn derlog_generators(phi: &Poly, ws: &WeightSystem) -> Result<Derlog> {
    if phi.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    ws.check_context(phi.ctx())?;
    if !phi.is_holomorphic() {
        return Err(Error::Context("phi must involve holomorphic variables only".into()));
    }
    if !squarefree_decomposition(phi)?.is_squarefree() {
        return Err(Error::NotSquarefree(phi.to_string()));
    }
    let ctx = phi.ctx().with_flags(false, false);
    let phi0 = phi.lift(&ctx);
    let n = ctx.n();
    let mut gens: Vec<Poly> = (0..n).map(|j| phi0.derivative(j)).collect();
    gens.push(phi0.clone());
    let raw: Vec<VectorField> = syzygies(&gens)
        .into_iter()
        .map(|row| {
            let mut c = row.into_coords();
            c.truncate(n);
            VectorField::new(&ctx, c).unwrap()
        })
        .filter(|f| !f.is_zero())
        .collect();

    let degree = is_weighted_homogeneous(&phi0, ws)?;
    let chosen = if degree.is_some() {
        let mut parts: Vec<VectorField> = Vec::new();
        for f in &raw {
            for (_, part) in f.graded_parts(ws) {
                debug_assert!(is_tangent(&part, &phi0));
                let part = normalize_field(&part);
                if !parts.contains(&part) {
                    parts.push(part);
                }
            }
        }
        parts.sort_by_cached_key(|p| sort_key(p, ws));
        let mut cands = vec![euler_field(&ctx, ws)];
        cands.extend(parts);
        prune(cands)?
    } else {
        let mut fields: Vec<VectorField> = raw.iter().map(normalize_field).collect();
        fields.sort_by_cached_key(|p| sort_key(p, ws));
        prune(fields)?
    };
    let generators: Vec<VectorField> =
        chosen.into_iter().map(|g| VectorField::new(phi.ctx(), g.components().to_vec()).unwrap()).collect();
    let degrees = generators.iter().map(|g| g.fil(ws).map(|f| f.finite().unwrap())).collect::<Result<_>>()?;
    Ok(Derlog { phi: phi.clone(), weights: ws.clone(), homogeneous_degree: degree, generators, degrees })
}

/// Default ordering used for ideals built from the derlog data.
pub fn default_ordering(ctx: &VarContext, ws: &WeightSystem) -> MonomialOrdering {
    MonomialOrdering::wgrevlex_for(ctx, ws)
}
