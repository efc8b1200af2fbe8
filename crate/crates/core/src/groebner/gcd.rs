//! Multivariate gcd by primitive polynomial remainder sequences, recursing
//! on the slots in context order.

use crate::poly::{Monomial, Poly};

fn main_slot(p: &Poly, q: &Poly) -> Option<usize> {
    (0..p.ctx().num_slots()).find(|&s| p.involves(s) || q.involves(s))
}

fn slot_power(p: &Poly, slot: usize, k: u32) -> Poly {
    let mut e = Monomial::from_elem(0, p.ctx().num_slots());
    e[slot] = k;
    Poly::monomial(p.ctx(), &e, num_traits::One::one())
}

/// gcd of the coefficients of `p` viewed as a polynomial in `slot`.
fn content(p: &Poly, slot: usize) -> Poly {
    p.coefficients_in(slot).iter().fold(Poly::zero(p.ctx()), |g, c| gcd_poly(&g, c))
}

fn primitive(p: &Poly, slot: usize) -> Poly {
    let c = content(p, slot);
    p.div_exact(&c).expect("content divides").monic()
}

/// `lc(b)^k * a mod b` in `slot`.
fn pseudo_rem(a: &Poly, b: &Poly, slot: usize) -> Poly {
    let db = b.degree_in(slot);
    let lb = b.coefficients_in(slot).pop().unwrap();
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(slot) >= db {
        let dr = r.degree_in(slot);
        let lr = r.coefficients_in(slot).pop().unwrap();
        let shift = &lr * &slot_power(b, slot, dr - db);
        r = &(&lb * &r) - &(&shift * b);
    }
    r
}

/// Greatest common divisor, normalized so that the lexicographically
/// leading coefficient is one; `gcd(0, 0) = 0`.
pub fn gcd_poly(p: &Poly, q: &Poly) -> Poly {
    if p.is_zero() {
        return q.monic();
    }
    if q.is_zero() {
        return p.monic();
    }
    let Some(v) = main_slot(p, q) else {
        return Poly::one(p.ctx());
    };
    if !p.involves(v) {
        return gcd_poly(&content(q, v), p);
    }
    if !q.involves(v) {
        return gcd_poly(&content(p, v), q);
    }
    let cont = gcd_poly(&content(p, v), &content(q, v));
    let mut a = primitive(p, v);
    let mut b = primitive(q, v);
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let r = pseudo_rem(&a, &b, v);
        if r.is_zero() {
            break;
        }
        if r.degree_in(v) == 0 {
            b = Poly::one(p.ctx());
            break;
        }
        a = b;
        b = primitive(&r, v);
    }
    (&cont * &b).monic()
}

pub(super) fn split_content(p: &Poly, slot: usize) -> (Poly, Poly) {
    let c = content(p, slot);
    let pp = p.div_exact(&c).expect("content divides");
    (c, pp)
}
