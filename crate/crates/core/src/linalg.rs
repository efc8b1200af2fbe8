//! Small dense linear algebra over Q.

use num_traits::Zero;

use crate::poly::Rational;

/// Row-reduces in place; returns the pivot columns in order.
pub fn row_reduce(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in 0..cols {
                    let d = &f * &m[r][k];
                    m[i][k] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m = rows.to_vec();
    row_reduce(&mut m).len()
}

/// Solves `sum_k lambda_k basis_k = target` for linearly independent
/// `basis`; `None` if `target` is not in their span.
pub fn solve_combination(basis: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let k = basis.len();
    let n = target.len();
    // augmented system, one row per coordinate
    let mut m: Vec<Vec<Rational>> = (0..n)
        .map(|j| {
            let mut row: Vec<Rational> = basis.iter().map(|b| b[j].clone()).collect();
            row.push(target[j].clone());
            row
        })
        .collect();
    let pivots = row_reduce(&mut m);
    if pivots.contains(&k) {
        return None;
    }
    let mut out = vec![Rational::zero(); k];
    for (r, &c) in pivots.iter().enumerate() {
        out[c] = m[r][k].clone();
    }
    Some(out)
}
