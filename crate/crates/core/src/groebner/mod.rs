//! Exact ideal and module computations over Q.

mod engine;
mod gcd;
pub mod ordering;
mod squarefree;

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly, Rational, Slot, VarContext};
use engine::{Elem, Sparse, Term};

pub use gcd::gcd_poly;
pub use ordering::{ModuleOrder, MonomialOrdering, OrderKind};
pub use squarefree::{squarefree_decomposition, SquarefreeDecomposition};

/// An element of the free module of rank `coords.len()`.
#[derive(Clone, PartialEq, Eq)]
pub struct ModuleElement {
    ctx: Arc<VarContext>,
    coords: Vec<Poly>,
}

impl ModuleElement {
    pub fn new(ctx: &Arc<VarContext>, coords: Vec<Poly>) -> Self {
        let coords = coords.into_iter().map(|c| c.lift(ctx)).collect();
        ModuleElement { ctx: ctx.clone(), coords }
    }

    pub fn ctx(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    pub fn coords(&self) -> &[Poly] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Poly::is_zero)
    }

    pub fn into_coords(self) -> Vec<Poly> {
        self.coords
    }
}

impl fmt::Display for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModuleElement{self}")
    }
}

fn pad(m: &Monomial, extra: usize) -> Monomial {
    let mut e = m.clone();
    e.extend(std::iter::repeat_n(0, extra));
    e
}

fn poly_to_sparse(p: &Poly, pos: u32, extra: usize, ord: &MonomialOrdering) -> Sparse {
    Sparse::from_terms(
        p.terms().map(|(m, c)| Term { pos, exp: pad(m, extra), coeff: c.clone() }).collect(),
        ord,
    )
}

fn coords_to_sparse(coords: &[Poly], offset: u32, extra: usize) -> Vec<Term> {
    let mut out = Vec::new();
    for (k, p) in coords.iter().enumerate() {
        out.extend(p.terms().map(|(m, c)| Term { pos: offset + k as u32, exp: pad(m, extra), coeff: c.clone() }));
    }
    out
}

/// Coordinates `offset..offset+rank` of `s`, dropping `extra` trailing slots
/// (which must be zero on every kept term).
fn sparse_to_coords(s: &Sparse, ctx: &Arc<VarContext>, offset: u32, rank: usize) -> Vec<Poly> {
    let n = ctx.num_slots();
    let mut out = vec![Poly::zero(ctx); rank];
    for t in &s.0 {
        if t.pos < offset || t.pos >= offset + rank as u32 {
            continue;
        }
        debug_assert!(t.exp[n..].iter().all(|&e| e == 0));
        out[(t.pos - offset) as usize].add_term(t.exp[..n].iter().copied().collect(), t.coeff.clone());
    }
    out
}

fn check_ordering(ctx: &VarContext, ord: &MonomialOrdering) {
    assert_eq!(ord.nslots(), ctx.num_slots(), "ordering does not match the variable context");
}

/// A reduced Groebner basis of an ideal (rank one) or a submodule of a free
/// module.
#[derive(Clone)]
pub struct GroebnerBasis {
    ctx: Arc<VarContext>,
    ordering: MonomialOrdering,
    rank: usize,
    is_ideal: bool,
    elems: Vec<Elem>,
    ngens: usize,
}

impl fmt::Debug for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroebnerBasis")
            .field("rank", &self.rank)
            .field("elements", &self.elements())
            .finish()
    }
}

impl GroebnerBasis {
    fn build(ctx: &Arc<VarContext>, ord: &MonomialOrdering, rank: usize, is_ideal: bool, rows: Vec<Vec<Poly>>, tracked: bool) -> Self {
        check_ordering(ctx, ord);
        let ngens = rows.len();
        let input = rows
            .iter()
            .enumerate()
            .map(|(i, r)| Elem {
                poly: Sparse::from_terms(coords_to_sparse(r, 0, 0), ord),
                rep: tracked.then(|| {
                    (0..ngens)
                        .map(|j| {
                            if i == j {
                                Sparse(vec![Term {
                                    pos: 0,
                                    exp: Monomial::from_elem(0, ctx.num_slots()),
                                    coeff: Rational::one(),
                                }])
                            } else {
                                Sparse::default()
                            }
                        })
                        .collect()
                }),
            })
            .collect();
        let elems = engine::buchberger(input, ord, rank == 1);
        GroebnerBasis { ctx: ctx.clone(), ordering: ord.clone(), rank, is_ideal, elems, ngens }
    }

    pub fn ctx(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    pub fn ordering(&self) -> &MonomialOrdering {
        &self.ordering
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn is_tracked(&self) -> bool {
        self.elems.first().is_none_or(|e| e.rep.is_some()) && self.ngens > 0
    }

    /// Basis polynomials (rank one only).
    pub fn polys(&self) -> Vec<Poly> {
        assert!(self.is_ideal, "not an ideal basis");
        self.elems.iter().map(|e| sparse_to_coords(&e.poly, &self.ctx, 0, 1).remove(0)).collect()
    }

    pub fn elements(&self) -> Vec<ModuleElement> {
        self.elems
            .iter()
            .map(|e| ModuleElement { ctx: self.ctx.clone(), coords: sparse_to_coords(&e.poly, &self.ctx, 0, self.rank) })
            .collect()
    }

    /// Expression of each basis element in the input generators, when the
    /// basis was computed with tracking.
    pub fn representations(&self) -> Option<Vec<Vec<Poly>>> {
        self.elems
            .iter()
            .map(|e| {
                e.rep.as_ref().map(|r| r.iter().map(|s| sparse_to_coords(s, &self.ctx, 0, 1).remove(0)).collect())
            })
            .collect()
    }

    /// The leading monomial and position of each basis element.
    pub fn leading_terms(&self) -> Vec<(usize, Monomial)> {
        self.elems
            .iter()
            .map(|e| {
                let t = e.poly.lead().unwrap();
                (t.pos as usize, t.exp.clone())
            })
            .collect()
    }

    fn reduce_row(&self, row: &[Poly]) -> (Vec<Poly>, Vec<Poly>) {
        check_ordering(&self.ctx, &self.ordering);
        assert_eq!(row.len(), self.rank, "rank mismatch");
        let p = Elem { poly: Sparse::from_terms(coords_to_sparse(row, 0, 0), &self.ordering), rep: None };
        let refs: Vec<&Elem> = self.elems.iter().collect();
        let mut q = vec![Sparse::default(); self.elems.len()];
        let r = engine::reduce(p, &refs, &self.ordering, true, Some(&mut q));
        let rem = sparse_to_coords(&r.poly, &self.ctx, 0, self.rank);
        let cof = q.iter().map(|s| sparse_to_coords(s, &self.ctx, 0, 1).remove(0)).collect();
        (rem, cof)
    }

    /// Remainder and cofactors with respect to the basis elements:
    /// `p = sum cofactor_i * basis_i + remainder`.
    pub fn normal_form(&self, p: &Poly) -> (Poly, Vec<Poly>) {
        assert!(self.is_ideal, "not an ideal basis");
        let (mut rem, cof) = self.reduce_row(std::slice::from_ref(&p.lift(&self.ctx)));
        (rem.remove(0), cof)
    }

    pub fn normal_form_module(&self, v: &ModuleElement) -> (ModuleElement, Vec<Poly>) {
        let (rem, cof) = self.reduce_row(&v.coords);
        (ModuleElement { ctx: self.ctx.clone(), coords: rem }, cof)
    }

    pub fn contains(&self, p: &Poly) -> bool {
        self.normal_form(p).0.is_zero()
    }

    pub fn contains_element(&self, v: &ModuleElement) -> bool {
        self.normal_form_module(v).0.is_zero()
    }

    /// Cofactors of `p` with respect to the original generators (requires a
    /// tracked basis); `None` if `p` is not a member.
    pub fn lift(&self, p: &Poly) -> Option<Vec<Poly>> {
        self.lift_row(std::slice::from_ref(p))
    }

    pub fn lift_element(&self, v: &ModuleElement) -> Option<Vec<Poly>> {
        self.lift_row(&v.coords)
    }

    fn lift_row(&self, row: &[Poly]) -> Option<Vec<Poly>> {
        let reps = self.representations().expect("basis was computed without tracking");
        let row: Vec<Poly> = row.iter().map(|p| p.lift(&self.ctx)).collect();
        let (rem, cof) = self.reduce_row(&row);
        if !rem.iter().all(Poly::is_zero) {
            return None;
        }
        let mut out = vec![Poly::zero(&self.ctx); self.ngens];
        for (c, rep) in cof.iter().zip(&reps) {
            if c.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(rep) {
                *o = &*o + &(c * r);
            }
        }
        Some(out)
    }

    /// Re-checks Buchberger's criterion on the stored basis.
    pub fn check_buchberger(&self) -> bool {
        engine::is_groebner(&self.elems, &self.ordering)
    }
}

pub fn groebner(gens: &[Poly], ord: &MonomialOrdering) -> GroebnerBasis {
    ideal_basis(gens, ord, false)
}

/// Like [`groebner`], additionally tracking how each basis element is
/// built from `gens` so that [`GroebnerBasis::lift`] works.
pub fn groebner_tracked(gens: &[Poly], ord: &MonomialOrdering) -> GroebnerBasis {
    ideal_basis(gens, ord, true)
}

fn ideal_basis(gens: &[Poly], ord: &MonomialOrdering, tracked: bool) -> GroebnerBasis {
    let ctx = match gens.first() {
        Some(g) => g.ctx().clone(),
        None => return empty_basis(ord, 1, true),
    };
    let rows = gens.iter().map(|g| vec![g.lift(&ctx)]).collect();
    GroebnerBasis::build(&ctx, ord, 1, true, rows, tracked)
}

fn empty_basis(ord: &MonomialOrdering, rank: usize, is_ideal: bool) -> GroebnerBasis {
    let names: Vec<String> = (0..ord.nslots()).map(|i| format!("x{}", i + 1)).collect();
    let ctx = VarContext::new(names, false, false).expect("generated names are valid");
    GroebnerBasis { ctx, ordering: ord.clone(), rank, is_ideal, elems: Vec::new(), ngens: 0 }
}

pub fn groebner_module(gens: &[ModuleElement], ord: &MonomialOrdering, tracked: bool) -> Result<GroebnerBasis> {
    let Some(first) = gens.first() else {
        return Ok(empty_basis(ord, 0, false));
    };
    let ctx = first.ctx.clone();
    let rank = first.rank();
    if gens.iter().any(|g| g.rank() != rank) {
        return Err(Error::Context("module generators have different ranks".into()));
    }
    let rows = gens.iter().map(|g| g.coords.iter().map(|p| p.lift(&ctx)).collect()).collect();
    Ok(GroebnerBasis::build(&ctx, ord, rank, false, rows, tracked))
}

/// Cofactors `c` with `p = sum c_i gens_i`, or `None` if `p` is not in the
/// ideal (global polynomial ring).
pub fn ideal_membership(p: &Poly, gens: &[Poly], ord: &MonomialOrdering) -> Option<Vec<Poly>> {
    if gens.is_empty() {
        return p.is_zero().then(Vec::new);
    }
    groebner_tracked(gens, ord).lift(p)
}

/// Generators of the syzygy module `{a : sum a_i v_i = 0}` of module
/// elements, each row having one entry per input element.
pub fn syzygies_module(gens: &[ModuleElement]) -> Vec<ModuleElement> {
    let Some(first) = gens.first() else { return Vec::new() };
    let ctx = first.ctx.clone();
    let r = first.rank();
    let k = gens.len();
    let ord = MonomialOrdering::grevlex_for(&ctx).with_module_order(ModuleOrder::PositionOverTerm);
    let input: Vec<Elem> = gens
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let mut terms = coords_to_sparse(&g.coords, 0, 0);
            terms.push(Term {
                pos: (r + i) as u32,
                exp: Monomial::from_elem(0, ctx.num_slots()),
                coeff: Rational::one(),
            });
            Elem { poly: Sparse::from_terms(terms, &ord), rep: None }
        })
        .collect();
    let basis = engine::buchberger(input, &ord, false);
    basis
        .iter()
        .filter(|e| e.poly.lead().unwrap().pos as usize >= r)
        .map(|e| ModuleElement { ctx: ctx.clone(), coords: sparse_to_coords(&e.poly, &ctx, r as u32, k) })
        .collect()
}

pub fn syzygies(gens: &[Poly]) -> Vec<ModuleElement> {
    let Some(first) = gens.first() else { return Vec::new() };
    let ctx = first.ctx().clone();
    let rows: Vec<ModuleElement> = gens.iter().map(|g| ModuleElement::new(&ctx, vec![g.clone()])).collect();
    syzygies_module(&rows)
}

fn holomorphic_only(p: &Poly) -> bool {
    let ctx = p.ctx();
    p.terms().all(|(m, _)| {
        m.iter().enumerate().all(|(s, &e)| e == 0 || matches!(ctx.slot(s), Slot::Holomorphic(_)))
    })
}

/// Dimension of `Q[x]/I` counted by standard monomials. The generators must
/// be weighted homogeneous for the ordering's weights (so the global and
/// local dimensions agree) and involve holomorphic variables only.
/// `None` means infinite.
pub fn quotient_dim(gens: &[Poly], ord: &MonomialOrdering) -> Result<Option<u64>> {
    let nonzero: Vec<&Poly> = gens.iter().filter(|g| !g.is_zero()).collect();
    let Some(first) = nonzero.first() else {
        return Ok(None);
    };
    let ctx = first.ctx().clone();
    check_ordering(&ctx, ord);
    for g in &nonzero {
        if !holomorphic_only(g) {
            return Err(Error::LocalDimensionUnsupported(format!("generator {g} involves t or conjugates")));
        }
        let mut degs = g.terms().map(|(m, _)| m.iter().zip(ord.weights()).map(|(&e, &w)| e as u64 * w).sum::<u64>());
        let d = degs.next().unwrap();
        if !degs.all(|e| e == d) {
            return Err(Error::LocalDimensionUnsupported(format!("generator {g} is not weighted homogeneous")));
        }
    }
    let polys: Vec<Poly> = nonzero.into_iter().cloned().collect();
    let gb = groebner(&polys, ord);
    let leads: Vec<Monomial> = gb.leading_terms().into_iter().map(|(_, m)| m).collect();
    let n = ctx.n();
    let hol: Vec<usize> = (0..ctx.num_slots()).filter(|&s| matches!(ctx.slot(s), Slot::Holomorphic(_))).collect();
    let mut bounds = Vec::with_capacity(n);
    for &s in &hol {
        let b = leads
            .iter()
            .filter(|m| m.iter().enumerate().all(|(k, &e)| k == s || e == 0))
            .map(|m| m[s])
            .min();
        match b {
            Some(b) => bounds.push(b),
            None => return Ok(None),
        }
    }
    if leads.iter().any(|m| m.iter().all(|&e| e == 0)) {
        return Ok(Some(0));
    }
    let mut count = 0u64;
    let mut exp = Monomial::from_elem(0, ctx.num_slots());
    count_standard(&hol, &bounds, 0, &mut exp, &leads, &mut count);
    Ok(Some(count))
}

fn count_standard(hol: &[usize], bounds: &[u32], k: usize, exp: &mut Monomial, leads: &[Monomial], count: &mut u64) {
    let divisible = |e: &Monomial| leads.iter().any(|m| m.iter().zip(e.iter()).all(|(a, b)| a <= b));
    if k == hol.len() {
        if !divisible(exp) {
            *count += 1;
        }
        return;
    }
    let s = hol[k];
    for e in 0..bounds[k] {
        exp[s] = e;
        // lower-order divisibility is monotone: once divisible, all higher powers are too
        if divisible(exp) {
            break;
        }
        count_standard(hol, bounds, k + 1, exp, leads, count);
    }
    exp[s] = 0;
}

/// Rabinowitsch test: `p` vanishes on `V(gens)` iff `1` lies in
/// `<gens, 1 - z p>` with a fresh variable `z`.
pub fn radical_membership(p: &Poly, gens: &[Poly]) -> bool {
    let Some(first) = gens.first() else { return p.is_zero() };
    let ctx = first.ctx().clone();
    let ord = MonomialOrdering::grevlex_for(&ctx).extended(1, false);
    let input = rabinowitsch_input(p, gens, &ctx, &ord);
    let basis = engine::buchberger(input, &ord, true);
    basis.iter().any(|e| e.poly.0.len() == 1 && e.poly.0[0].exp.iter().all(|&x| x == 0))
}

fn rabinowitsch_input(p: &Poly, gens: &[Poly], ctx: &Arc<VarContext>, ord: &MonomialOrdering) -> Vec<Elem> {
    let n = ctx.num_slots();
    let mut input: Vec<Elem> =
        gens.iter().map(|g| Elem { poly: poly_to_sparse(&g.lift(ctx), 0, 1, ord), rep: None }).collect();
    let mut terms: Vec<Term> = p
        .lift(ctx)
        .terms()
        .map(|(m, c)| {
            let mut e = pad(m, 1);
            e[n] = 1;
            Term { pos: 0, exp: e, coeff: -c }
        })
        .collect();
    terms.push(Term { pos: 0, exp: Monomial::from_elem(0, n + 1), coeff: Rational::one() });
    input.push(Elem { poly: Sparse::from_terms(terms, ord), rep: None });
    input
}

/// Generators of `I ∩ Q[x]` for `I` given on `n + extra` slots, using an
/// elimination ordering for the extra slots.
fn eliminate(input: Vec<Elem>, ord: &MonomialOrdering, ctx: &Arc<VarContext>) -> Vec<Poly> {
    let n = ctx.num_slots();
    let basis = engine::buchberger(input, ord, true);
    basis
        .iter()
        .filter(|e| e.poly.0.iter().all(|t| t.exp[n..].iter().all(|&x| x == 0)))
        .map(|e| sparse_to_coords(&e.poly, ctx, 0, 1).remove(0))
        .collect()
}

/// The saturation `I : p^inf`.
pub fn saturation(gens: &[Poly], p: &Poly) -> Vec<Poly> {
    let Some(first) = gens.first() else { return Vec::new() };
    let ctx = first.ctx().clone();
    let ord = MonomialOrdering::grevlex_for(&ctx).extended(1, true);
    eliminate(rabinowitsch_input(p, gens, &ctx, &ord), &ord, &ctx)
}

/// The ideal quotient `I : p`, via `I ∩ <p> = <z I, (1 - z) p> ∩ Q[x]`.
pub fn ideal_quotient(gens: &[Poly], p: &Poly) -> Vec<Poly> {
    let Some(first) = gens.first() else { return Vec::new() };
    let ctx = first.ctx().clone();
    if p.is_zero() {
        return vec![Poly::one(&ctx)];
    }
    let n = ctx.num_slots();
    let ord = MonomialOrdering::grevlex_for(&ctx).extended(1, true);
    let mut z = Monomial::from_elem(0, n + 1);
    z[n] = 1;
    let zero = Monomial::from_elem(0, n + 1);
    let unit = |e: &Monomial, c: Rational| Sparse(vec![Term { pos: 0, exp: e.clone(), coeff: c }]);
    let mut input: Vec<Elem> = gens
        .iter()
        .map(|g| {
            let s = poly_to_sparse(&g.lift(&ctx), 0, 1, &ord);
            Elem { poly: Sparse::default().add_scaled(&Rational::one(), &z, &s, &ord), rep: None }
        })
        .collect();
    let ps = poly_to_sparse(&p.lift(&ctx), 0, 1, &ord);
    let one_minus_z = unit(&zero, Rational::one()).add(&unit(&z, -Rational::one()), &ord);
    let mut prod = Sparse::default();
    for t in &one_minus_z.0 {
        prod = prod.add_scaled(&t.coeff, &t.exp, &ps, &ord);
    }
    input.push(Elem { poly: prod, rep: None });
    eliminate(input, &ord, &ctx)
        .into_iter()
        .map(|q| q.div_exact(p).expect("intersection elements are multiples of p"))
        .collect()
}

/// Witness of membership in the localization at the origin:
/// `unit * p = sum cofactors_i gens_i` with `unit(0) != 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalMembership {
    pub unit: Poly,
    pub cofactors: Vec<Poly>,
}

/// Membership of `p` in the ideal generated by `gens` in the local ring at
/// the origin. Holds iff the quotient `I : p` contains an element with
/// nonzero constant term; the witness is then lifted globally.
pub fn local_membership(p: &Poly, gens: &[Poly], ord: &MonomialOrdering) -> Option<LocalMembership> {
    let first = gens.first()?;
    let ctx = first.ctx().clone();
    let gb = groebner_tracked(gens, ord);
    if let Some(cofactors) = gb.lift(p) {
        return Some(LocalMembership { unit: Poly::one(&ctx), cofactors });
    }
    let quotient = ideal_quotient(gens, p);
    let unit = quotient
        .into_iter()
        .filter(|q| !q.constant_term().is_zero())
        .min_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.to_string().cmp(&b.to_string())))?;
    let cofactors = gb.lift(&(&unit * &p.lift(&ctx)))?;
    Some(LocalMembership { unit, cofactors })
}

/// Whether `p` vanishes on the germ at the origin of `V(gens)`: the
/// saturation `I : p^inf` is not contained in the maximal ideal.
pub fn local_radical_membership(p: &Poly, gens: &[Poly]) -> bool {
    if gens.is_empty() {
        return p.is_zero();
    }
    if p.is_zero() {
        return true;
    }
    saturation(gens, p).iter().any(|q| !q.constant_term().is_zero())
}

/// Whether the ideal is the unit ideal.
pub fn is_unit_ideal(gens: &[Poly]) -> bool {
    let Some(first) = gens.first() else { return false };
    let ord = MonomialOrdering::grevlex_for(first.ctx());
    groebner(gens, &ord).polys().iter().any(|q| q.is_constant() && !q.is_zero())
}

/// Whether every generator of `a` lies in the module generated by `b`.
pub fn module_contains_all(a: &[ModuleElement], b: &[ModuleElement]) -> Result<bool> {
    if a.iter().all(ModuleElement::is_zero) {
        return Ok(true);
    }
    let Some(first) = b.first() else { return Ok(false) };
    let ord = MonomialOrdering::grevlex_for(first.ctx());
    let gb = groebner_module(b, &ord, false)?;
    Ok(a.iter().all(|v| v.is_zero() || gb.contains_element(v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn ps(ctx: &Arc<VarContext>, xs: &[&str]) -> Vec<Poly> {
        xs.iter().map(|s| parse_poly(s, ctx).unwrap()).collect()
    }

    #[test]
    fn basis_examples() {
        let c = VarContext::new(["x", "y"], false, false).unwrap();
        let ord = MonomialOrdering::grevlex_for(&c);
        let gb = groebner(&ps(&c, &["x+y", "x-y"]), &ord);
        let mut got: Vec<String> = gb.polys().iter().map(|p| p.to_string()).collect();
        got.sort();
        assert_eq!(got, vec!["x", "y"]);
        assert!(gb.check_buchberger());
        assert_eq!(groebner(&ps(&c, &["x"]), &ord).polys()[0].to_string(), "x");
    }

    #[test]
    fn normal_form_with_cofactors() {
        let c = VarContext::new(["x", "y"], false, false).unwrap();
        let ord = MonomialOrdering::grevlex_for(&c);
        let gb = groebner(&ps(&c, &["x"]), &ord);
        let (r, cof) = gb.normal_form(&parse_poly("x^2 + y", &c).unwrap());
        assert_eq!(r.to_string(), "y");
        assert_eq!(cof[0].to_string(), "x");
    }

    #[test]
    fn membership_examples() {
        let c = VarContext::new(["x", "y"], false, false).unwrap();
        let ord = MonomialOrdering::grevlex_for(&c);
        assert!(ideal_membership(&parse_poly("x", &c).unwrap(), &ps(&c, &["x^2"]), &ord).is_none());
        let cof = ideal_membership(&parse_poly("y", &c).unwrap(), &ps(&c, &["x", "y"]), &ord).unwrap();
        assert_eq!(cof.iter().map(|p| p.to_string()).collect::<Vec<_>>(), vec!["0", "1"]);
    }

    #[test]
    fn syzygy_examples() {
        let c = VarContext::new(["x", "y"], false, false).unwrap();
        let s = syzygies(&ps(&c, &["x", "y"]));
        assert_eq!(s.len(), 1);
        let row: Vec<String> = s[0].coords().iter().map(|p| p.to_string()).collect();
        assert!(row == ["y", "-x"] || row == ["-y", "x"], "{row:?}");
        let g = ps(&c, &["x^2", "x"]);
        for row in syzygies(&g) {
            let sum = &(&row.coords()[0] * &g[0]) + &(&row.coords()[1] * &g[1]);
            assert!(sum.is_zero());
        }
    }

    #[test]
    fn quotient_dimensions() {
        let c = VarContext::new(["x", "y"], false, false).unwrap();
        let ord = MonomialOrdering::grevlex_for(&c);
        assert_eq!(quotient_dim(&ps(&c, &["x", "y"]), &ord).unwrap(), Some(1));
        assert_eq!(quotient_dim(&ps(&c, &["x^2", "y^2"]), &ord).unwrap(), Some(4));
        assert_eq!(quotient_dim(&ps(&c, &["2*x", "3*y^2"]), &ord).unwrap(), Some(2));
        assert_eq!(quotient_dim(&ps(&c, &["x^2"]), &ord).unwrap(), None);
        assert!(matches!(
            quotient_dim(&ps(&c, &["x + y^2"]), &ord),
            Err(Error::LocalDimensionUnsupported(_))
        ));
    }

    #[test]
    fn radical_examples() {
        let c = VarContext::new(["x", "y"], false, false).unwrap();
        assert!(radical_membership(&parse_poly("x", &c).unwrap(), &ps(&c, &["x^2"])));
        assert!(!radical_membership(&parse_poly("y", &c).unwrap(), &ps(&c, &["x^2"])));
    }

    #[test]
    fn local_versus_global() {
        let c = VarContext::new(["x"], false, true).unwrap();
        let g = ps(&c, &["x + x*t"]);
        assert!(!radical_membership(&parse_poly("x", &c).unwrap(), &g));
        assert!(local_radical_membership(&parse_poly("x", &c).unwrap(), &g));
        let ord = MonomialOrdering::grevlex_for(&c);
        assert!(ideal_membership(&parse_poly("x", &c).unwrap(), &g, &ord).is_none());
        let w = local_membership(&parse_poly("x", &c).unwrap(), &g, &ord).unwrap();
        assert!(!w.unit.constant_term().is_zero());
        assert_eq!(&w.unit * &parse_poly("x", &c).unwrap(), &w.cofactors[0] * &g[0]);
    }
}
