//! Sparse polynomials with exact rational coefficients.
//!
//! A [`VarContext`] fixes the variable slots: the holomorphic variables
//! `x_1..x_n`, optionally their formal conjugates, and optionally the
//! deformation parameter `t` (always the last slot). Every [`Poly`] carries
//! the context it lives in; binary operations require equal contexts.

mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub use parse::parse_poly;

pub type Rational = BigRational;

/// Exponent vector indexed by slot.
pub type Monomial = SmallVec<[u32; 8]>;

pub const PARAMETER_NAME: &str = "t";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    Holomorphic(usize),
    Conjugate(usize),
    Parameter,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarContext {
    names: Vec<String>,
    has_conjugates: bool,
    has_parameter: bool,
}

fn valid_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl VarContext {
    pub fn new<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
        has_conjugates: bool,
        has_parameter: bool,
    ) -> Result<Arc<Self>> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::Context("at least one variable is required".into()));
        }
        for (i, name) in names.iter().enumerate() {
            if !valid_identifier(name) {
                return Err(Error::Context(format!("`{name}` is not an identifier")));
            }
            if name == "conj" || name == PARAMETER_NAME {
                return Err(Error::Context(format!("`{name}` is reserved")));
            }
            if names[..i].contains(name) {
                return Err(Error::Context(format!("duplicate variable `{name}`")));
            }
        }
        Ok(Arc::new(VarContext { names, has_conjugates, has_parameter }))
    }

    /// Number of holomorphic variables.
    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn has_conjugates(&self) -> bool {
        self.has_conjugates
    }

    pub fn has_parameter(&self) -> bool {
        self.has_parameter
    }

    pub fn num_slots(&self) -> usize {
        let n = self.n();
        n + if self.has_conjugates { n } else { 0 } + usize::from(self.has_parameter)
    }

    pub fn conj_slot(&self, i: usize) -> Option<usize> {
        (self.has_conjugates && i < self.n()).then(|| self.n() + i)
    }

    pub fn t_slot(&self) -> Option<usize> {
        self.has_parameter.then(|| self.num_slots() - 1)
    }

    pub fn slot(&self, slot: usize) -> Slot {
        let n = self.n();
        if slot < n {
            Slot::Holomorphic(slot)
        } else if Some(slot) == self.t_slot() {
            Slot::Parameter
        } else {
            Slot::Conjugate(slot - n)
        }
    }

    pub fn slot_name(&self, slot: usize) -> String {
        match self.slot(slot) {
            Slot::Holomorphic(i) => self.names[i].clone(),
            Slot::Conjugate(i) => format!("conj({})", self.names[i]),
            Slot::Parameter => PARAMETER_NAME.to_string(),
        }
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|s| s == name)
    }

    /// Same variables, with conjugate and parameter slots switched as requested.
    pub fn with_flags(&self, has_conjugates: bool, has_parameter: bool) -> Arc<Self> {
        Arc::new(VarContext { names: self.names.clone(), has_conjugates, has_parameter })
    }

    /// Context on a subset of the holomorphic variables (in the given order).
    pub fn restrict(&self, keep: &[usize]) -> Result<Arc<Self>> {
        VarContext::new(
            keep.iter().map(|&i| self.names[i].clone()),
            self.has_conjugates,
            self.has_parameter,
        )
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    ctx: Arc<VarContext>,
    terms: BTreeMap<Monomial, Rational>,
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn same_ctx(a: &Arc<VarContext>, b: &Arc<VarContext>) {
    assert!(Arc::ptr_eq(a, b) || a == b, "polynomials live in different variable contexts");
}

impl Poly {
    pub fn zero(ctx: &Arc<VarContext>) -> Self {
        Poly { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ctx: &Arc<VarContext>, c: Rational) -> Self {
        let mut p = Poly::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(Self::unit_monomial(ctx), c);
        }
        p
    }

    pub fn one(ctx: &Arc<VarContext>) -> Self {
        Poly::constant(ctx, Rational::one())
    }

    pub fn from_int(ctx: &Arc<VarContext>, c: i64) -> Self {
        Poly::constant(ctx, rat(c))
    }

    fn unit_monomial(ctx: &VarContext) -> Monomial {
        SmallVec::from_elem(0, ctx.num_slots())
    }

    /// The monomial `coeff * prod slot^exp`.
    pub fn monomial(ctx: &Arc<VarContext>, exps: &[u32], coeff: Rational) -> Self {
        assert_eq!(exps.len(), ctx.num_slots());
        let mut p = Poly::zero(ctx);
        if !coeff.is_zero() {
            p.terms.insert(SmallVec::from_slice(exps), coeff);
        }
        p
    }

    pub fn slot_var(ctx: &Arc<VarContext>, slot: usize) -> Self {
        let mut e = Self::unit_monomial(ctx);
        e[slot] = 1;
        Poly::monomial(ctx, &e, Rational::one())
    }

    /// Holomorphic variable `x_i`.
    pub fn var(ctx: &Arc<VarContext>, i: usize) -> Self {
        assert!(i < ctx.n());
        Poly::slot_var(ctx, i)
    }

    pub fn conj_var(ctx: &Arc<VarContext>, i: usize) -> Self {
        Poly::slot_var(ctx, ctx.conj_slot(i).expect("context has no conjugates"))
    }

    pub fn param(ctx: &Arc<VarContext>) -> Self {
        Poly::slot_var(ctx, ctx.t_slot().expect("context has no parameter"))
    }

    pub fn from_terms(
        ctx: &Arc<VarContext>,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Self {
        let mut p = Poly::zero(ctx);
        for (m, c) in terms {
            assert_eq!(m.len(), ctx.num_slots());
            p.add_term(m, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn ctx(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic order of exponent vectors (ascending).
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &[u32]) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Self::unit_monomial(&self.ctx))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.iter().all(|&e| e == 0))
    }

    /// Lexicographically largest term.
    pub fn lex_leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    pub fn degree_in(&self, slot: usize) -> u32 {
        self.terms.keys().map(|m| m[slot]).max().unwrap_or(0)
    }

    pub fn involves(&self, slot: usize) -> bool {
        self.terms.keys().any(|m| m[slot] > 0)
    }

    /// True when no conjugate slot occurs.
    pub fn is_holomorphic(&self) -> bool {
        let ctx = &self.ctx;
        (0..ctx.n()).filter_map(|i| ctx.conj_slot(i)).all(|s| !self.involves(s))
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ctx);
        }
        Poly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &[u32], c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ctx);
        }
        Poly {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, a)| (e.iter().zip(m).map(|(x, y)| x + y).collect(), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(&self.ctx);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Partial derivative with respect to a slot.
    pub fn derivative(&self, slot: usize) -> Poly {
        let mut out = Poly::zero(&self.ctx);
        for (m, c) in &self.terms {
            if m[slot] > 0 {
                let mut e = m.clone();
                let k = e[slot];
                e[slot] -= 1;
                out.terms.insert(e, c * rat(k as i64));
            }
        }
        out
    }

    /// Swaps every `x_i` with `conj(x_i)`.
    pub fn conjugate(&self) -> Poly {
        let ctx = &self.ctx;
        assert!(ctx.has_conjugates(), "context has no conjugate slots");
        let n = ctx.n();
        Poly {
            ctx: ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.clone();
                    for i in 0..n {
                        e.swap(i, n + i);
                    }
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// Substitutes a constant for a slot.
    pub fn substitute(&self, slot: usize, value: &Rational) -> Poly {
        let mut out = Poly::zero(&self.ctx);
        for (m, c) in &self.terms {
            let k = m[slot];
            let mut e = m.clone();
            e[slot] = 0;
            let factor = if k == 0 { Rational::one() } else { num_traits::pow(value.clone(), k as usize) };
            out.add_term(e, c * factor);
        }
        out
    }

    /// Re-expresses the polynomial in another context through a slot map
    /// (`map[old_slot] = Some(new_slot)`); terms touching an unmapped slot
    /// with positive exponent are dropped.
    pub fn remap(&self, ctx: &Arc<VarContext>, map: &[Option<usize>]) -> Poly {
        assert_eq!(map.len(), self.ctx.num_slots());
        let mut out = Poly::zero(ctx);
        'terms: for (m, c) in &self.terms {
            let mut e = Self::unit_monomial(ctx);
            for (slot, &k) in m.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                match map[slot] {
                    Some(s) => e[s] += k,
                    None => continue 'terms,
                }
            }
            out.add_term(e, c.clone());
        }
        out
    }

    /// Embeds into a context with the same holomorphic variables and a
    /// superset of the conjugate/parameter slots.
    pub fn lift(&self, ctx: &Arc<VarContext>) -> Poly {
        if Arc::ptr_eq(&self.ctx, ctx) || *self.ctx == **ctx {
            return Poly { ctx: ctx.clone(), terms: self.terms.clone() };
        }
        assert_eq!(self.ctx.names(), ctx.names(), "lift across different variables");
        let src = &self.ctx;
        let map: Vec<Option<usize>> = (0..src.num_slots())
            .map(|s| match src.slot(s) {
                Slot::Holomorphic(i) => Some(i),
                Slot::Conjugate(i) => ctx.conj_slot(i),
                Slot::Parameter => ctx.t_slot(),
            })
            .collect();
        let out = self.remap(ctx, &map);
        assert_eq!(out.len(), self.len(), "lift would drop terms");
        out
    }

    /// Coefficients with respect to powers of one slot: `self = sum c_k slot^k`.
    pub fn coefficients_in(&self, slot: usize) -> Vec<Poly> {
        let deg = self.degree_in(slot) as usize;
        let mut out = vec![Poly::zero(&self.ctx); if self.is_zero() { 0 } else { deg + 1 }];
        for (m, c) in &self.terms {
            let k = m[slot] as usize;
            let mut e = m.clone();
            e[slot] = 0;
            out[k].terms.insert(e, c.clone());
        }
        out
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        same_ctx(&self.ctx, &d.ctx);
        assert!(!d.is_zero(), "division by zero polynomial");
        let (dm, dc) = d.lex_leading().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut quot = Poly::zero(&self.ctx);
        while let Some((m, c)) = rem.lex_leading() {
            if m.iter().zip(&dm).any(|(a, b)| a < b) {
                return None;
            }
            let e: Monomial = m.iter().zip(&dm).map(|(a, b)| a - b).collect();
            let q = c / &dc;
            rem = &rem - &d.mul_monomial(&e, &q);
            quot.add_term(e, q);
        }
        Some(quot)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_exact(self).is_some()
    }

    /// Scales so that the lexicographically leading coefficient is one.
    pub fn monic(&self) -> Poly {
        match self.lex_leading() {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// Terms in canonical print order: descending total degree, then
    /// descending lexicographic exponent vector.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        v
    }

    pub fn map_coefficients(&self, f: impl Fn(&Rational) -> Rational) -> Poly {
        Poly::from_terms(&self.ctx, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }
}

pub(crate) fn fmt_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub(crate) fn fmt_monomial(ctx: &VarContext, m: &[u32]) -> String {
    let mut parts = Vec::new();
    for (slot, &k) in m.iter().enumerate() {
        match k {
            0 => {}
            1 => parts.push(ctx.slot_name(slot)),
            _ => parts.push(format!("{}^{}", ctx.slot_name(slot), k)),
        }
    }
    parts.join("*")
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mono = fmt_monomial(&self.ctx, m);
            if mono.is_empty() {
                write!(f, "{}", fmt_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{}", fmt_rational(&a), mono)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        same_ctx(&self.ctx, &rhs.ctx);
        let (mut big, small) = if self.len() >= rhs.len() { (self.clone(), rhs) } else { (rhs.clone(), self) };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c.clone());
        }
        big
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        same_ctx(&self.ctx, &rhs.ctx);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        same_ctx(&self.ctx, &rhs.ctx);
        let mut out = Poly::zero(&self.ctx);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                let e: Monomial = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: &Poly) -> Poly {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Arc<VarContext> {
        VarContext::new(["x", "y"], true, true).unwrap()
    }

    #[test]
    fn context_validation() {
        assert!(VarContext::new(Vec::<String>::new(), false, false).is_err());
        assert!(VarContext::new(["x", "x"], false, false).is_err());
        assert!(VarContext::new(["t"], false, true).is_err());
        assert!(VarContext::new(["2x"], false, false).is_err());
        let c = ctx();
        assert_eq!(c.num_slots(), 5);
        assert_eq!(c.slot_name(3), "conj(y)");
        assert_eq!(c.slot_name(4), "t");
    }

    #[test]
    fn arithmetic_and_printing() {
        let c = ctx();
        let x = Poly::var(&c, 0);
        let y = Poly::var(&c, 1);
        let p = &(&x + &y) * &(&x - &y);
        assert_eq!(p.to_string(), "x^2 - y^2");
        assert_eq!((&p - &p).to_string(), "0");
        assert_eq!(p.derivative(0).to_string(), "2*x");
        let half = Poly::constant(&c, Rational::new(1.into(), 2.into()));
        assert_eq!((&half * &x).to_string(), "1/2*x");
    }

    #[test]
    fn exact_division() {
        let c = ctx();
        let x = Poly::var(&c, 0);
        let y = Poly::var(&c, 1);
        let a = &(&x + &y).pow(3) * &(&x - &y);
        assert_eq!(a.div_exact(&(&x + &y).pow(2)).unwrap(), &(&x + &y) * &(&x - &y));
        assert!(a.div_exact(&(&x - &y).pow(2)).is_none());
    }

    #[test]
    fn conjugation_swaps_slots() {
        let c = ctx();
        let u = Poly::var(&c, 0);
        let ub = Poly::conj_var(&c, 0);
        assert_eq!(u.conjugate(), ub);
        let p = &u.pow(2) * &Poly::var(&c, 1);
        assert_eq!(p.conjugate().conjugate(), p);
    }

    #[test]
    fn substitution_and_coefficients() {
        let c = ctx();
        let x = Poly::var(&c, 0);
        let t = Poly::param(&c);
        let p = &(&x * &t) + &x.pow(2);
        let at2 = p.substitute(c.t_slot().unwrap(), &rat(2));
        assert_eq!(at2.to_string(), "x^2 + 2*x");
        let cs = p.coefficients_in(0);
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[1], t);
    }
}
