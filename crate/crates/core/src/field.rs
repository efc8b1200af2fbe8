//! Vector fields `sum eta_j d/dx_j` with polynomial components.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{Poly, Rational, VarContext};
use crate::weights::{homogeneous_parts, weighted_fil, Fil, WeightSystem};

#[derive(Clone, PartialEq, Eq)]
pub struct VectorField {
    ctx: Arc<VarContext>,
    components: Vec<Poly>,
}

impl VectorField {
    pub fn new(ctx: &Arc<VarContext>, components: Vec<Poly>) -> Result<Self> {
        if components.len() != ctx.n() {
            return Err(Error::Context(format!(
                "vector field has {} components, expected {}",
                components.len(),
                ctx.n()
            )));
        }
        let components = components.into_iter().map(|c| c.lift(ctx)).collect();
        Ok(VectorField { ctx: ctx.clone(), components })
    }

    pub fn zero(ctx: &Arc<VarContext>) -> Self {
        VectorField { ctx: ctx.clone(), components: vec![Poly::zero(ctx); ctx.n()] }
    }

    /// The coordinate field `d/dx_i`.
    pub fn partial(ctx: &Arc<VarContext>, i: usize) -> Self {
        let mut v = VectorField::zero(ctx);
        v.components[i] = Poly::one(ctx);
        v
    }

    pub fn ctx(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn component(&self, j: usize) -> &Poly {
        &self.components[j]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    pub fn is_holomorphic(&self) -> bool {
        self.components.iter().all(Poly::is_holomorphic)
    }

    /// `df(eta) = sum_j eta_j * df/dx_j`.
    pub fn apply(&self, f: &Poly) -> Poly {
        let mut acc = Poly::zero(&self.ctx);
        for (j, c) in self.components.iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &(c * &f.derivative(j));
            }
        }
        acc
    }

    pub fn scale(&self, p: &Poly) -> VectorField {
        VectorField {
            ctx: self.ctx.clone(),
            components: self.components.iter().map(|c| c * p).collect(),
        }
    }

    pub fn scale_rational(&self, c: &Rational) -> VectorField {
        VectorField {
            ctx: self.ctx.clone(),
            components: self.components.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn add(&self, other: &VectorField) -> VectorField {
        VectorField {
            ctx: self.ctx.clone(),
            components: self.components.iter().zip(&other.components).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &VectorField) -> VectorField {
        VectorField {
            ctx: self.ctx.clone(),
            components: self.components.iter().zip(&other.components).map(|(a, b)| a - b).collect(),
        }
    }

    /// Constant terms of the components, i.e. the value at the origin.
    pub fn value_at_origin(&self) -> Vec<Rational> {
        self.components.iter().map(Poly::constant_term).collect()
    }

    /// Component `j` of the Lie bracket is `eta(xi_j) - xi(eta_j)`.
    pub fn lie_bracket(&self, other: &VectorField) -> VectorField {
        let components = (0..self.ctx.n())
            .map(|k| &self.apply(&other.components[k]) - &other.apply(&self.components[k]))
            .collect();
        VectorField { ctx: self.ctx.clone(), components }
    }

    /// `inf_j (fil(eta_j) - w_j)`.
    pub fn fil(&self, ws: &WeightSystem) -> Result<Fil> {
        if self.is_zero() {
            return Err(Error::ZeroField);
        }
        Ok(self
            .components
            .iter()
            .enumerate()
            .filter_map(|(j, c)| weighted_fil(c, ws).finite().map(|d| d - ws.weight(j) as i64))
            .min()
            .map_or(Fil::Infinite, Fil::Finite))
    }

    /// The graded pieces: `eta = sum_d eta^(d)` where every component of
    /// `eta^(d)` is weighted homogeneous of degree `d + w_j`.
    pub fn graded_parts(&self, ws: &WeightSystem) -> BTreeMap<i64, VectorField> {
        let mut out: BTreeMap<i64, VectorField> = BTreeMap::new();
        for (j, c) in self.components.iter().enumerate() {
            for (deg, part) in homogeneous_parts(c, ws) {
                let d = deg - ws.weight(j) as i64;
                let slot = out.entry(d).or_insert_with(|| VectorField::zero(&self.ctx));
                slot.components[j] = part;
            }
        }
        out
    }

    /// The degree `d` when every nonzero component has filtration exactly
    /// `d + w_j` and is weighted homogeneous.
    pub fn homogeneous_degree(&self, ws: &WeightSystem) -> Option<i64> {
        let parts = self.graded_parts(ws);
        (parts.len() == 1).then(|| *parts.keys().next().unwrap())
    }

    /// Sets the killed coordinates to zero and drops their components.
    pub fn project(&self, sub: &Arc<VarContext>, keep: &[usize]) -> VectorField {
        let map = projection_map(&self.ctx, keep);
        VectorField {
            ctx: sub.clone(),
            components: keep.iter().map(|&j| self.components[j].remap(sub, &map)).collect(),
        }
    }
}

/// Slot map sending kept holomorphic variables (and their conjugates) to
/// their positions in the restricted context; killed variables map to `None`.
pub fn projection_map(ctx: &VarContext, keep: &[usize]) -> Vec<Option<usize>> {
    use crate::poly::Slot;
    let k = keep.len();
    (0..ctx.num_slots())
        .map(|s| match ctx.slot(s) {
            Slot::Holomorphic(i) => keep.iter().position(|&j| j == i),
            Slot::Conjugate(i) => keep.iter().position(|&j| j == i).map(|p| k + p),
            Slot::Parameter => Some(k + if ctx.has_conjugates() { k } else { 0 }),
        })
        .collect()
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VectorField{self}")
    }
}
