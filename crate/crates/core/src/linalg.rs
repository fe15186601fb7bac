//! Dense linear algebra over the field of rational functions.
//!
//! Matrices are small (a few dozen entries at most), so plain Gauss-Jordan
//! elimination with exact [`Scalar`] arithmetic is adequate. All routines pick
//! the pivot in the least available column and the least available row, so
//! results are deterministic.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub type Matrix = Vec<Vec<Scalar>>;

/// Reduced row echelon form together with the pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rows: Matrix,
    pub pivots: Vec<usize>,
}

pub fn rref(m: &Matrix, ncols: usize) -> Echelon {
    let mut rows: Matrix = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        if !inv.is_one() {
            for x in rows[r].iter_mut().skip(c) {
                *x = x.mul(&inv);
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !p.is_zero() {
                    *x = x.sub(&factor.mul(p));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Echelon { rows, pivots }
}

pub fn rank(m: &Matrix, ncols: usize) -> usize {
    rref(m, ncols).pivots.len()
}

/// Solves `A x = b` where `A` is given column by column (`cols[j]` is the
/// j-th column, each of length `b.len()`). Free variables are set to zero.
/// Returns `None` when the system is inconsistent.
pub fn solve_columns(cols: &[Vec<Scalar>], b: &[Scalar]) -> Option<Vec<Scalar>> {
    let k = cols.len();
    let nvars = b.first().map(Scalar::nvars).unwrap_or(0);
    let aug: Matrix = (0..b.len())
        .map(|i| {
            let mut row: Vec<Scalar> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(b[i].clone());
            row
        })
        .collect();
    let ech = rref(&aug, k + 1);
    if ech.pivots.last() == Some(&k) {
        return None;
    }
    let mut x = vec![Scalar::zero(nvars); k];
    for (row, &c) in ech.rows.iter().zip(&ech.pivots) {
        x[c] = row[k].clone();
    }
    Some(x)
}

/// Basis of the kernel of `A` (given by columns), one vector per free column
/// with that free variable set to one.
pub fn kernel_columns(cols: &[Vec<Scalar>], nrows: usize, nvars: usize) -> Vec<Vec<Scalar>> {
    let k = cols.len();
    let m: Matrix = (0..nrows)
        .map(|i| cols.iter().map(|c| c[i].clone()).collect())
        .collect();
    let ech = rref(&m, k);
    let mut out = Vec::new();
    for free in (0..k).filter(|c| !ech.pivots.contains(c)) {
        let mut v = vec![Scalar::zero(nvars); k];
        v[free] = Scalar::one(nvars);
        for (row, &c) in ech.rows.iter().zip(&ech.pivots) {
            v[c] = row[free].neg();
        }
        out.push(v);
    }
    out
}

pub fn determinant(m: &Matrix) -> Scalar {
    let n = m.len();
    let nvars = m.first().and_then(|r| r.first()).map(Scalar::nvars).unwrap_or(0);
    let mut rows = m.clone();
    let mut det = Scalar::one(nvars);
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| !rows[i][c].is_zero()) else {
            return Scalar::zero(nvars);
        };
        if pr != c {
            rows.swap(pr, c);
            det = det.neg();
        }
        det = det.mul(&rows[c][c]);
        let inv = rows[c][c].inv().expect("pivot is nonzero");
        for i in c + 1..n {
            if rows[i][c].is_zero() {
                continue;
            }
            let factor = rows[i][c].mul(&inv);
            for j in c..n {
                let t = factor.mul(&rows[c][j]);
                rows[i][j] = rows[i][j].sub(&t);
            }
        }
    }
    det
}

pub fn inverse(m: &Matrix) -> Result<Matrix> {
    let n = m.len();
    let nvars = m.first().and_then(|r| r.first()).map(Scalar::nvars).unwrap_or(0);
    let aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    Scalar::one(nvars)
                } else {
                    Scalar::zero(nvars)
                }
            }));
            r
        })
        .collect();
    let ech = rref(&aug, n);
    if ech.pivots.len() < n {
        return Err(Error::NonInvertible {
            determinant: determinant(m).to_string(),
        });
    }
    Ok(ech.rows.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let nvars = a.first().and_then(|r| r.first()).map(Scalar::nvars).unwrap_or(0);
    let inner = b.len();
    let ncols = b.first().map(Vec::len).unwrap_or(0);
    a.iter()
        .map(|row| {
            (0..ncols)
                .map(|j| {
                    (0..inner).fold(Scalar::zero(nvars), |acc, k| {
                        if row[k].is_zero() || b[k][j].is_zero() {
                            acc
                        } else {
                            acc.add(&row[k].mul(&b[k][j]))
                        }
                    })
                })
                .collect()
        })
        .collect()
}
