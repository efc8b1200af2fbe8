//! Buchberger's algorithm for submodules of free modules over Q[x].
//!
//! Elements are sparse term lists sorted ascending under the ordering (the
//! leading term is last). Ideals are the rank-one case. Pair handling uses
//! the Gebauer-Moeller update with the normal selection strategy; optional
//! cofactor tracking expresses every basis element in terms of the input.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use super::ordering::MonomialOrdering;
use crate::poly::{Monomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Term {
    pub pos: u32,
    pub exp: Monomial,
    pub coeff: Rational,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub(crate) struct Sparse(pub Vec<Term>);

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

fn sub_exp(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

impl Sparse {
    pub fn from_terms(mut terms: Vec<Term>, ord: &MonomialOrdering) -> Sparse {
        terms.sort_by(|a, b| ord.cmp_terms(a.pos, &a.exp, b.pos, &b.exp));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.pos == t.pos && last.exp == t.exp => {
                    last.coeff += t.coeff;
                    if last.coeff.is_zero() {
                        out.pop();
                    }
                }
                _ => {
                    if !t.coeff.is_zero() {
                        out.push(t)
                    }
                }
            }
        }
        Sparse(out)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.0.last()
    }

    pub fn scale(&self, c: &Rational) -> Sparse {
        if c.is_zero() {
            return Sparse::default();
        }
        Sparse(self.0.iter().map(|t| Term { pos: t.pos, exp: t.exp.clone(), coeff: &t.coeff * c }).collect())
    }

    /// `self + c * x^shift * g`.
    pub fn add_scaled(&self, c: &Rational, shift: &[u32], g: &Sparse, ord: &MonomialOrdering) -> Sparse {
        if c.is_zero() || g.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.0.len() + g.0.len());
        let mut a = self.0.iter().peekable();
        let mut b = g.0.iter().map(|t| Term {
            pos: t.pos,
            exp: t.exp.iter().zip(shift).map(|(x, y)| x + y).collect(),
            coeff: &t.coeff * c,
        });
        let mut nb = b.next();
        loop {
            match (a.peek(), nb.as_ref()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => {
                    out.push(nb.take().unwrap());
                    nb = b.next();
                }
                (Some(x), Some(y)) => match ord.cmp_terms(x.pos, &x.exp, y.pos, &y.exp) {
                    Ordering::Less => out.push(a.next().unwrap().clone()),
                    Ordering::Greater => {
                        out.push(nb.take().unwrap());
                        nb = b.next();
                    }
                    Ordering::Equal => {
                        let s = &x.coeff + &y.coeff;
                        let x = a.next().unwrap();
                        if !s.is_zero() {
                            out.push(Term { pos: x.pos, exp: x.exp.clone(), coeff: s });
                        }
                        nb = b.next();
                    }
                },
            }
        }
        Sparse(out)
    }

    pub fn add(&self, other: &Sparse, ord: &MonomialOrdering) -> Sparse {
        let zero: Monomial = other.0.first().map(|t| t.exp.iter().map(|_| 0).collect()).unwrap_or_default();
        self.add_scaled(&Rational::one(), &zero, other, ord)
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Elem {
    pub poly: Sparse,
    pub rep: Option<Vec<Sparse>>,
}

impl Elem {
    fn lead(&self) -> &Term {
        self.poly.lead().expect("basis elements are nonzero")
    }

    fn make_monic(&mut self) {
        let lc = self.lead().coeff.clone();
        if !lc.is_one() {
            let inv = lc.recip();
            self.poly = self.poly.scale(&inv);
            if let Some(rep) = &mut self.rep {
                for r in rep.iter_mut() {
                    *r = r.scale(&inv);
                }
            }
        }
    }
}

fn rep_update(rep: &mut Option<Vec<Sparse>>, c: &Rational, shift: &[u32], g: &Elem, ord: &MonomialOrdering) {
    if let (Some(r), Some(gr)) = (rep.as_mut(), g.rep.as_ref()) {
        for (ri, gi) in r.iter_mut().zip(gr) {
            *ri = ri.add_scaled(c, shift, gi, ord);
        }
    }
}

/// Reduces `p` by `basis`. With `full`, also reduces tail terms; otherwise
/// stops at the first irreducible leading term. Returns the remainder and
/// the quotient of every basis element (`p = sum q_i b_i + r`) when
/// `quotients` is requested.
pub(crate) fn reduce(
    p: Elem,
    basis: &[&Elem],
    ord: &MonomialOrdering,
    full: bool,
    mut quotients: Option<&mut Vec<Sparse>>,
) -> Elem {
    let Elem { poly: mut p, mut rep } = p;
    let mut done: Vec<Term> = Vec::new();
    while let Some(lt) = p.lead() {
        let hit = basis.iter().enumerate().find(|(_, g)| {
            let gl = g.lead();
            gl.pos == lt.pos && divides(&gl.exp, &lt.exp)
        });
        match hit {
            Some((k, g)) => {
                let gl = g.lead();
                let shift = sub_exp(&lt.exp, &gl.exp);
                let c = &lt.coeff / &gl.coeff;
                let neg = -&c;
                p = p.add_scaled(&neg, &shift, &g.poly, ord);
                rep_update(&mut rep, &neg, &shift, g, ord);
                if let Some(q) = quotients.as_deref_mut() {
                    let unit = Sparse(vec![Term { pos: 0, exp: shift.clone(), coeff: Rational::one() }]);
                    q[k] = q[k].add_scaled(&c, &shift.iter().map(|_| 0).collect::<Monomial>(), &unit, ord);
                }
            }
            None if full => done.push(p.0.pop().unwrap()),
            None => break,
        }
    }
    if full {
        done.reverse();
        p = Sparse(done);
    }
    Elem { poly: p, rep }
}

struct Pair {
    i: usize,
    j: usize,
    pos: u32,
    lcm: Monomial,
}

struct State<'a> {
    ord: &'a MonomialOrdering,
    rank_one: bool,
    store: Vec<Elem>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl State<'_> {
    fn basis_refs(&self) -> Vec<&Elem> {
        self.active.iter().map(|&k| &self.store[k]).collect()
    }

    fn insert(&mut self, mut h: Elem) {
        h.make_monic();
        let hi = self.store.len();
        let (hpos, hexp) = {
            let l = h.lead();
            (l.pos, l.exp.clone())
        };
        self.store.push(h);

        // Gebauer-Moeller update
        let mut cands: Vec<Pair> = self
            .active
            .iter()
            .filter_map(|&g| {
                let gl = self.store[g].lead();
                (gl.pos == hpos).then(|| Pair { i: g, j: hi, pos: hpos, lcm: lcm(&gl.exp, &hexp) })
            })
            .collect();
        let mut kept: Vec<Pair> = Vec::new();
        while let Some(p) = cands.pop() {
            let gexp = &self.store[p.i].lead().exp;
            let is_coprime = self.rank_one && coprime(gexp, &hexp);
            let covered = cands.iter().chain(kept.iter()).any(|q| divides(&q.lcm, &p.lcm));
            if is_coprime || !covered {
                kept.push(p);
            }
        }
        if self.rank_one {
            kept.retain(|p| !coprime(&self.store[p.i].lead().exp, &hexp));
        }
        let store = &self.store;
        self.pairs.retain(|p| {
            if p.pos != hpos || !divides(&hexp, &p.lcm) {
                return true;
            }
            let li = lcm(&store[p.i].lead().exp, &hexp);
            let lj = lcm(&store[p.j].lead().exp, &hexp);
            li == p.lcm || lj == p.lcm
        });
        self.pairs.extend(kept);
        let store = &self.store;
        self.active.retain(|&g| {
            let gl = store[g].lead();
            !(gl.pos == hpos && divides(&hexp, &gl.exp))
        });
        self.active.push(hi);
    }

    fn next_pair(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let ord = self.ord;
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (a, b) = (&self.pairs[k], &self.pairs[best]);
            let c = ord
                .cmp_terms(a.pos, &a.lcm, b.pos, &b.lcm)
                .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)));
            if c == Ordering::Less {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }

    fn spoly(&self, p: &Pair) -> Elem {
        let (a, b) = (&self.store[p.i], &self.store[p.j]);
        let (la, lb) = (a.lead(), b.lead());
        let sa = sub_exp(&p.lcm, &la.exp);
        let sb = sub_exp(&p.lcm, &lb.exp);
        let ca = la.coeff.recip();
        let cb = -lb.coeff.recip();
        let poly = Sparse::default().add_scaled(&ca, &sa, &a.poly, self.ord).add_scaled(&cb, &sb, &b.poly, self.ord);
        let mut rep = a.rep.as_ref().map(|r| vec![Sparse::default(); r.len()]);
        rep_update(&mut rep, &ca, &sa, a, self.ord);
        rep_update(&mut rep, &cb, &sb, b, self.ord);
        Elem { poly, rep }
    }
}

/// Reduced Groebner basis of the submodule generated by `input`.
pub(crate) fn buchberger(input: Vec<Elem>, ord: &MonomialOrdering, rank_one: bool) -> Vec<Elem> {
    let mut st = State { ord, rank_one, store: Vec::new(), active: Vec::new(), pairs: Vec::new() };
    for e in input {
        let r = reduce(e, &st.basis_refs(), ord, true, None);
        if !r.poly.is_zero() {
            st.insert(r);
        }
    }
    while let Some(p) = st.next_pair() {
        let s = st.spoly(&p);
        let r = reduce(s, &st.basis_refs(), ord, true, None);
        if !r.poly.is_zero() {
            st.insert(r);
        }
    }
    interreduce(st.active.iter().map(|&k| st.store[k].clone()).collect(), ord)
}

/// Minimalizes and tail-reduces a Groebner basis; output sorted ascending
/// by leading term.
pub(crate) fn interreduce(mut elems: Vec<Elem>, ord: &MonomialOrdering) -> Vec<Elem> {
    elems.sort_by(|a, b| {
        let (x, y) = (a.lead(), b.lead());
        ord.cmp_terms(x.pos, &x.exp, y.pos, &y.exp)
    });
    let mut minimal: Vec<Elem> = Vec::new();
    for e in elems {
        let l = e.lead();
        if !minimal.iter().any(|m| {
            let ml = m.lead();
            ml.pos == l.pos && divides(&ml.exp, &l.exp)
        }) {
            minimal.push(e);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<&Elem> = minimal.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, e)| e).collect();
        let mut r = reduce(minimal[k].clone(), &others, ord, true, None);
        r.make_monic();
        out.push(r);
    }
    out
}

/// Every S-pair of `basis` reduces to zero (Buchberger's criterion).
pub(crate) fn is_groebner(basis: &[Elem], ord: &MonomialOrdering) -> bool {
    let refs: Vec<&Elem> = basis.iter().collect();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let (a, b) = (basis[i].lead(), basis[j].lead());
            if a.pos != b.pos {
                continue;
            }
            let l = lcm(&a.exp, &b.exp);
            let sa = sub_exp(&l, &a.exp);
            let sb = sub_exp(&l, &b.exp);
            let s = Sparse::default()
                .add_scaled(&a.coeff.recip(), &sa, &basis[i].poly, ord)
                .add_scaled(&-b.coeff.recip(), &sb, &basis[j].poly, ord);
            let r = reduce(Elem { poly: s, rep: None }, &refs, ord, false, None);
            if !r.poly.is_zero() {
                return false;
            }
        }
    }
    true
}
