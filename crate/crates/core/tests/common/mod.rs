// Dimension counting by linear algebra in each weighted degree.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rxlip_core::Poly;

fn monomials_of_degree(w: &[u32], d: u32) -> Vec<Vec<u32>> {
    fn rec(w: &[u32], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == w.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let mut e = 0;
        while e * w[i] <= left {
            cur.push(e);
            rec(w, i + 1, left - e * w[i], cur, out);
            cur.pop();
            e += 1;
        }
    }
    let mut out = Vec::new();
    rec(w, 0, d, &mut Vec::new(), &mut out);
    out
}

fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = BigRational::one() / rows[r][c].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone() * inv.clone();
                for k in c..cols {
                    let v = rows[r][k].clone() * f.clone();
                    rows[i][k] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

fn wdeg(m: &[u32], w: &[u32]) -> u32 {
    m.iter().zip(w).map(|(a, b)| a * b).sum()
}

/// `dim R/I` from the Hilbert function; `None` if it is still nonzero at
/// the degree bound.
pub fn oracle(gens: &[Poly], w: &[u32], bound: u32) -> Option<u64> {
    let wmax = *w.iter().max().unwrap();
    let gdeg: Vec<u32> = gens
        .iter()
        .map(|g| wdeg(g.terms().next().unwrap().0, w))
        .collect();
    let mut total = 0u64;
    let mut full_run = 0;
    for d in 0..=bound {
        let basis = monomials_of_degree(w, d);
        let index: BTreeMap<Vec<u32>, usize> = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut rows = Vec::new();
        for (g, &gd) in gens.iter().zip(&gdeg) {
            if gd > d {
                continue;
            }
            for m in monomials_of_degree(w, d - gd) {
                let mut row = vec![BigRational::zero(); basis.len()];
                for (gm, c) in g.terms() {
                    let prod: Vec<u32> = gm.iter().zip(&m).map(|(a, b)| a + b).collect();
                    row[index[&prod]] += c.clone();
                }
                rows.push(row);
            }
        }
        let h = basis.len() - rank(rows);
        total += h as u64;
        full_run = if h == 0 { full_run + 1 } else { 0 };
        if full_run >= wmax {
            return Some(total);
        }
    }
    None
}
