//! Floating-point evaluation of exact polynomials.
//!
//! Conjugate slots always receive the complex conjugate of the value given
//! for their holomorphic partner. [`Scaled`] carries a separate binary
//! exponent so that high-degree monomials near the origin neither underflow
//! nor overflow.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::poly::{Poly, Rational, Slot};

fn rational_to_f64(c: &Rational) -> f64 {
    c.to_f64().unwrap_or_else(|| {
        let n = c.numer().to_f64().unwrap_or(f64::NAN);
        let d = c.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

fn slot_values(p: &Poly, point: &[Complex64], t: Complex64) -> Result<Vec<Complex64>> {
    let ctx = p.ctx();
    if point.len() < ctx.n() {
        return Err(Error::MissingAssignment(ctx.names()[point.len()].clone()));
    }
    Ok((0..ctx.num_slots())
        .map(|s| match ctx.slot(s) {
            Slot::Holomorphic(i) => point[i],
            Slot::Conjugate(i) => point[i].conj(),
            Slot::Parameter => t,
        })
        .collect())
}

/// Evaluates `p` at `point` (one value per holomorphic variable) and `t`.
pub fn eval_complex(p: &Poly, point: &[Complex64], t: Complex64) -> Result<Complex64> {
    let vals = slot_values(p, point, t)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for (m, c) in p.terms() {
        let mut term = Complex64::new(rational_to_f64(c), 0.0);
        for (s, &k) in m.iter().enumerate() {
            if k > 0 {
                term *= vals[s].powu(k);
            }
        }
        acc += term;
    }
    Ok(acc)
}

/// Evaluates by variable name.
pub fn eval_named(
    p: &Poly,
    values: &std::collections::HashMap<String, Complex64>,
    t: Complex64,
) -> Result<Complex64> {
    let point = p
        .ctx()
        .names()
        .iter()
        .map(|n| values.get(n).copied().ok_or_else(|| Error::MissingAssignment(n.clone())))
        .collect::<Result<Vec<_>>>()?;
    eval_complex(p, &point, t)
}

/// Complex number `mant * 2^exp` with `max(|re|, |im|)` in `[0.5, 1)` or zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaled {
    mant: Complex64,
    exp: i64,
}

impl Scaled {
    pub const ZERO: Scaled = Scaled { mant: Complex64 { re: 0.0, im: 0.0 }, exp: 0 };

    pub fn new(z: Complex64) -> Scaled {
        Scaled { mant: z, exp: 0 }.normalized()
    }

    pub fn from_f64(x: f64) -> Scaled {
        Scaled::new(Complex64::new(x, 0.0))
    }

    /// `2^(log2)` as a positive real.
    pub fn from_log2(log2: f64) -> Scaled {
        let e = log2.floor();
        Scaled { mant: Complex64::new((log2 - e).exp2(), 0.0), exp: e as i64 }.normalized()
    }

    fn normalized(self) -> Scaled {
        let m = self.mant.re.abs().max(self.mant.im.abs());
        if m == 0.0 || !m.is_finite() {
            return Scaled { mant: self.mant, exp: if m == 0.0 { 0 } else { self.exp } };
        }
        let e = m.log2().floor() as i64 + 1;
        Scaled { mant: self.mant * (-(e as f64)).exp2(), exp: self.exp + e }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.re == 0.0 && self.mant.im == 0.0
    }

    pub fn conj(self) -> Scaled {
        Scaled { mant: self.mant.conj(), exp: self.exp }
    }

    /// `log2 |z|`; `-inf` for zero.
    pub fn log2_abs(&self) -> f64 {
        if self.is_zero() {
            f64::NEG_INFINITY
        } else {
            self.mant.norm().log2() + self.exp as f64
        }
    }

    pub fn abs(&self) -> Scaled {
        Scaled { mant: Complex64::new(self.mant.norm(), 0.0), exp: self.exp }.normalized()
    }

    /// Nearest `Complex64` (may underflow to zero or overflow to infinity).
    pub fn to_complex(&self) -> Complex64 {
        if self.is_zero() {
            return self.mant;
        }
        let e = self.exp.clamp(-2000, 2000) as i32;
        // split to avoid intermediate overflow of 2^e
        let half = e / 2;
        self.mant * 2f64.powi(half) * 2f64.powi(e - half)
    }

    pub fn powu(self, k: u32) -> Scaled {
        let mut acc = Scaled::from_f64(1.0);
        let mut base = self;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base;
            }
            k >>= 1;
            if k > 0 {
                base = base * base;
            }
        }
        acc
    }
}

impl Add for Scaled {
    type Output = Scaled;
    fn add(self, rhs: Scaled) -> Scaled {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let (hi, lo) = if self.exp >= rhs.exp { (self, rhs) } else { (rhs, self) };
        let shift = hi.exp - lo.exp;
        if shift > 1100 {
            return hi;
        }
        Scaled { mant: hi.mant + lo.mant * (-(shift as f64)).exp2(), exp: hi.exp }.normalized()
    }
}

impl Neg for Scaled {
    type Output = Scaled;
    fn neg(self) -> Scaled {
        Scaled { mant: -self.mant, exp: self.exp }
    }
}

impl Sub for Scaled {
    type Output = Scaled;
    fn sub(self, rhs: Scaled) -> Scaled {
        self + (-rhs)
    }
}

impl Mul for Scaled {
    type Output = Scaled;
    fn mul(self, rhs: Scaled) -> Scaled {
        Scaled { mant: self.mant * rhs.mant, exp: self.exp + rhs.exp }.normalized()
    }
}

impl Div for Scaled {
    type Output = Scaled;
    fn div(self, rhs: Scaled) -> Scaled {
        Scaled { mant: self.mant / rhs.mant, exp: self.exp - rhs.exp }.normalized()
    }
}

/// Extended-range evaluation of `p`.
pub fn eval_scaled(p: &Poly, point: &[Scaled], t: Scaled) -> Result<Scaled> {
    let ctx = p.ctx();
    if point.len() < ctx.n() {
        return Err(Error::MissingAssignment(ctx.names()[point.len()].clone()));
    }
    let vals: Vec<Scaled> = (0..ctx.num_slots())
        .map(|s| match ctx.slot(s) {
            Slot::Holomorphic(i) => point[i],
            Slot::Conjugate(i) => point[i].conj(),
            Slot::Parameter => t,
        })
        .collect();
    let mut acc = Scaled::ZERO;
    for (m, c) in p.terms() {
        let mut term = Scaled::from_f64(rational_to_f64(c));
        for (s, &k) in m.iter().enumerate() {
            if k > 0 {
                term = term * vals[s].powu(k);
            }
        }
        acc = acc + term;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, VarContext};

    #[test]
    fn evaluation_examples() {
        let c = VarContext::new(["x"], true, false).unwrap();
        let i = Complex64::new(0.0, 1.0);
        let v = eval_complex(&parse_poly("x^2", &c).unwrap(), &[i], Complex64::default()).unwrap();
        assert!((v - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
        let v = eval_complex(&parse_poly("x*conj(x)", &c).unwrap(), &[Complex64::new(1.0, 1.0)], Complex64::default())
            .unwrap();
        assert!((v - Complex64::new(2.0, 0.0)).norm() < 1e-15);

        let c3 = VarContext::new(["u", "v", "w"], false, false).unwrap();
        let phi = parse_poly("2*u^5 - v^7 + w^5", &c3).unwrap();
        let one = Complex64::new(1.0, 0.0);
        assert_eq!(eval_complex(&phi, &[one, one, -one], one).unwrap().norm(), 0.0);
        assert!(matches!(eval_complex(&phi, &[one], one), Err(Error::MissingAssignment(_))));
    }

    #[test]
    fn scaled_matches_plain_and_survives_underflow() {
        let c = VarContext::new(["x", "y"], true, true).unwrap();
        let p = parse_poly("3*x^2*conj(y) - t*y + 1/2", &c).unwrap();
        let pt = [Complex64::new(0.3, -0.7), Complex64::new(1.1, 0.2)];
        let t = Complex64::new(0.5, 0.0);
        let plain = eval_complex(&p, &pt, t).unwrap();
        let sc = eval_scaled(&p, &[Scaled::new(pt[0]), Scaled::new(pt[1])], Scaled::new(t)).unwrap();
        assert!((sc.to_complex() - plain).norm() < 1e-13);

        let tiny = parse_poly("x^200", &c).unwrap();
        let v = eval_scaled(&tiny, &[Scaled::from_f64(1e-3), Scaled::ZERO], Scaled::ZERO).unwrap();
        assert!((v.log2_abs() - 200.0 * 1e-3f64.log2()).abs() < 1e-9);
    }
}
