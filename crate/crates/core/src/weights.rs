//! Weight systems and the weighted filtration.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly, Slot, VarContext};

/// Filtration value: an integer, or `+inf` for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Fil {
    Finite(i64),
    Infinite,
}

impl Fil {
    pub fn finite(self) -> Option<i64> {
        match self {
            Fil::Finite(d) => Some(d),
            Fil::Infinite => None,
        }
    }
}

impl fmt::Display for Fil {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fil::Finite(d) => write!(f, "{d}"),
            Fil::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightSystem {
    weights: Vec<u32>,
    degree_of_t: i64,
}

impl WeightSystem {
    pub fn new(weights: Vec<u32>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Weights("empty weight list".into()));
        }
        if weights.iter().any(|&w| w == 0) {
            return Err(Error::Weights("weights must be positive".into()));
        }
        Ok(WeightSystem { weights, degree_of_t: 0 })
    }

    /// Positive rational weights `(num, den)`, scaled by the lcm of the
    /// denominators and then divided by the gcd of the results.
    pub fn from_rationals(ws: &[(u64, u64)]) -> Result<Self> {
        if ws.iter().any(|&(p, q)| p == 0 || q == 0) {
            return Err(Error::Weights("weights must be positive".into()));
        }
        let l = ws.iter().fold(1u64, |acc, &(_, q)| acc.lcm(&q));
        let ints: Vec<u64> = ws.iter().map(|&(p, q)| p * (l / q)).collect();
        let g = ints.iter().fold(0u64, |acc, &x| acc.gcd(&x));
        let out = ints
            .iter()
            .map(|&x| u32::try_from(x / g).map_err(|_| Error::Weights("weight too large".into())))
            .collect::<Result<Vec<_>>>()?;
        WeightSystem::new(out)
    }

    pub fn uniform(n: usize) -> Self {
        WeightSystem { weights: vec![1; n], degree_of_t: 0 }
    }

    pub fn with_degree_of_t(mut self, d: i64) -> Self {
        self.degree_of_t = d;
        self
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.weights[i]
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn degree_of_t(&self) -> i64 {
        self.degree_of_t
    }

    /// `w = w_1 w_2 ... w_n`.
    pub fn product_w(&self) -> u64 {
        self.weights.iter().map(|&w| w as u64).product()
    }

    pub fn max_weight(&self) -> u32 {
        *self.weights.iter().max().unwrap()
    }

    pub fn min_weight(&self) -> u32 {
        *self.weights.iter().min().unwrap()
    }

    /// Stable permutation listing coordinates by descending weight.
    pub fn descending_permutation(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.n()).collect();
        idx.sort_by(|&a, &b| self.weights[b].cmp(&self.weights[a]));
        idx
    }

    /// Index of the unique minimal weight, if it is unique.
    pub fn unique_min_index(&self) -> Option<usize> {
        let m = self.min_weight();
        let mut hits = self.weights.iter().enumerate().filter(|(_, &w)| w == m);
        let (i, _) = hits.next()?;
        hits.next().is_none().then_some(i)
    }

    pub fn check_context(&self, ctx: &VarContext) -> Result<()> {
        if ctx.n() != self.n() {
            return Err(Error::Weights(format!(
                "{} weights for {} variables",
                self.n(),
                ctx.n()
            )));
        }
        Ok(())
    }

    pub fn slot_weight(&self, ctx: &VarContext, slot: usize) -> i64 {
        match ctx.slot(slot) {
            Slot::Holomorphic(i) | Slot::Conjugate(i) => self.weights[i] as i64,
            Slot::Parameter => self.degree_of_t,
        }
    }

    pub fn monomial_fil(&self, ctx: &VarContext, m: &Monomial) -> i64 {
        m.iter().enumerate().map(|(s, &k)| k as i64 * self.slot_weight(ctx, s)).sum()
    }

    /// `log ||x||_w` with `||x||_w = (sum |x_i|^(2w/w_i))^(1/2w)`, evaluated
    /// in log space so tiny radii do not underflow. `-inf` at the origin.
    pub fn log_weighted_norm(&self, x: &[Complex64]) -> f64 {
        let w = self.product_w() as f64;
        let logs: Vec<f64> = x
            .iter()
            .zip(&self.weights)
            .filter(|(z, _)| z.norm() > 0.0)
            .map(|(z, &wi)| (2.0 * w / wi as f64) * z.norm().ln())
            .collect();
        if logs.is_empty() {
            return f64::NEG_INFINITY;
        }
        let m = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let s: f64 = logs.iter().map(|l| (l - m).exp()).sum();
        (m + s.ln()) / (2.0 * w)
    }

    pub fn weighted_norm(&self, x: &[Complex64]) -> f64 {
        self.log_weighted_norm(x).exp()
    }

    /// Quasi-homogeneous scaling `x_i -> lambda^{w_i} x_i`.
    pub fn scale_point(&self, x: &[Complex64], lambda: f64) -> Vec<Complex64> {
        x.iter().zip(&self.weights).map(|(z, &w)| z * lambda.powi(w as i32)).collect()
    }
}

/// Minimum over terms of the weighted degree; `+inf` for zero.
pub fn weighted_fil(p: &Poly, ws: &WeightSystem) -> Fil {
    p.terms()
        .map(|(m, _)| ws.monomial_fil(p.ctx(), m))
        .min()
        .map_or(Fil::Infinite, Fil::Finite)
}

/// The common weighted degree of all terms, if there is one.
pub fn is_weighted_homogeneous(p: &Poly, ws: &WeightSystem) -> Result<Option<i64>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut degs = p.terms().map(|(m, _)| ws.monomial_fil(p.ctx(), m));
    let d = degs.next().unwrap();
    Ok(degs.all(|e| e == d).then_some(d))
}

/// Splits `p` into weighted-homogeneous components keyed by degree.
pub fn homogeneous_parts(p: &Poly, ws: &WeightSystem) -> BTreeMap<i64, Poly> {
    let mut out: BTreeMap<i64, Poly> = BTreeMap::new();
    for (m, c) in p.terms() {
        let d = ws.monomial_fil(p.ctx(), m);
        out.entry(d)
            .or_insert_with(|| Poly::zero(p.ctx()))
            .add_term(m.clone(), c.clone());
    }
    out
}
