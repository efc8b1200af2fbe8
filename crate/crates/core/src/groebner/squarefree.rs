//! Squarefree decomposition (Yun's algorithm on primitive parts).

use std::collections::BTreeMap;

use super::gcd::{gcd_poly, split_content};
use crate::error::{Error, Result};
use crate::poly::{Poly, Rational};

/// `input = unit * prod factor^multiplicity`, factors monic, squarefree and
/// pairwise coprime, at most one factor per multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquarefreeDecomposition {
    pub unit: Rational,
    pub parts: Vec<(Poly, u32)>,
}

impl SquarefreeDecomposition {
    pub fn is_squarefree(&self) -> bool {
        self.parts.iter().all(|(_, m)| *m == 1)
    }

    pub fn max_multiplicity(&self) -> u32 {
        self.parts.iter().map(|(_, m)| *m).max().unwrap_or(0)
    }

    /// `unit * prod factor^multiplicity`.
    pub fn expand(&self, like: &Poly) -> Poly {
        self.parts
            .iter()
            .fold(Poly::constant(like.ctx(), self.unit.clone()), |acc, (f, m)| &acc * &f.pow(*m))
    }

    /// `prod factor^(multiplicity - 1)`.
    pub fn excess(&self, like: &Poly) -> Poly {
        self.parts.iter().fold(Poly::one(like.ctx()), |acc, (f, m)| &acc * &f.pow(m - 1))
    }
}

fn yun(pp: &Poly, v: usize, out: &mut BTreeMap<u32, Poly>) {
    let d = pp.derivative(v);
    let g = gcd_poly(pp, &d);
    let mut c = pp.div_exact(&g).expect("gcd divides");
    let mut dd = &d.div_exact(&g).expect("gcd divides") - &c.derivative(v);
    let mut i = 1;
    while c.degree_in(v) > 0 {
        let a = gcd_poly(&c, &dd);
        c = c.div_exact(&a).expect("gcd divides");
        dd = &dd.div_exact(&a).expect("gcd divides") - &c.derivative(v);
        if !a.is_constant() {
            merge(out, i, a);
        }
        i += 1;
    }
}

fn merge(out: &mut BTreeMap<u32, Poly>, m: u32, f: Poly) {
    let f = f.monic();
    match out.remove(&m) {
        Some(g) => out.insert(m, (&g * &f).monic()),
        None => out.insert(m, f),
    };
}

fn decompose(p: &Poly, out: &mut BTreeMap<u32, Poly>) {
    let Some(v) = (0..p.ctx().num_slots()).find(|&s| p.involves(s)) else {
        return;
    };
    let (content, pp) = split_content(p, v);
    yun(&pp, v, out);
    decompose(&content, out);
}

pub fn squarefree_decomposition(p: &Poly) -> Result<SquarefreeDecomposition> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = BTreeMap::new();
    decompose(p, &mut out);
    let parts: Vec<(Poly, u32)> = out.into_iter().map(|(m, f)| (f, m)).collect();
    let prod = parts.iter().fold(Poly::one(p.ctx()), |acc, (f, m)| &acc * &f.pow(*m));
    let unit = p.lex_leading().unwrap().1 / prod.lex_leading().unwrap().1;
    debug_assert_eq!(prod.scale(&unit), *p);
    Ok(SquarefreeDecomposition { unit, parts })
}
