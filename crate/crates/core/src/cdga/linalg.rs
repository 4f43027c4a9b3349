//! Dense exact linear algebra over a coefficient [`Field`].
//!
//! Sizes here are small (monomial bases in one degree), so plain Gaussian
//! elimination is enough.

use crate::field::{Field, Scalar};

pub type Matrix = Vec<Vec<Scalar>>;

/// Reduced row echelon form. Returns the nonzero rows and their pivot
/// column indices.
pub fn rref(field: &Field, mut rows: Matrix) -> (Matrix, Vec<usize>) {
    let nrows = rows.len();
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r >= nrows {
            break;
        }
        let Some(pr) = (r..nrows).find(|&i| !field.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = field.inv(&rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = field.mul(x, &inv);
        }
        for i in 0..nrows {
            if i != r && !field.is_zero(&rows[i][c]) {
                let f = rows[i][c].clone();
                for j in 0..ncols {
                    let t = field.mul(&f, &rows[r][j]);
                    rows[i][j] = field.sub(&rows[i][j], &t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Basis of the null space of the matrix (rows x cols), as vectors of
/// length `ncols`. One basis vector per free column, free variable set
/// to 1, in increasing column order.
pub fn kernel_basis(field: &Field, rows: Matrix, ncols: usize) -> Vec<Vec<Scalar>> {
    let (rr, pivots) = rref(field, rows);
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; ncols];
        for &p in &pivots {
            v[p] = true;
        }
        v
    };
    let mut out = Vec::new();
    for free in 0..ncols {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![field.zero(); ncols];
        v[free] = field.one();
        for (ri, &p) in pivots.iter().enumerate() {
            // row ri: x_p + sum coeff * x_free = 0
            v[p] = field.neg(&rr[ri][free]);
        }
        out.push(v);
    }
    out
}

/// Solves M x = b, returning the particular solution with all free
/// variables set to zero (deterministic under the fixed column order),
/// or None when inconsistent.
pub fn solve(field: &Field, m: &Matrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    let nrows = m.len();
    let ncols = m.first().map(|r| r.len()).unwrap_or(0);
    assert_eq!(b.len(), nrows);
    let mut aug: Matrix = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    if nrows == 0 {
        return Some(vec![field.zero(); ncols]);
    }
    let (rr, pivots) = rref(field, std::mem::take(&mut aug));
    if pivots.contains(&ncols) {
        return None; // pivot in the augmented column
    }
    let mut x = vec![field.zero(); ncols];
    for (ri, &p) in pivots.iter().enumerate() {
        x[p] = rr[ri][ncols].clone();
    }
    Some(x)
}

/// Incremental echelon span used for membership tests and quotient bases.
pub struct Span {
    field: Field,
    ncols: usize,
    /// echelon rows with their pivot columns
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl Span {
    pub fn new(field: Field, ncols: usize) -> Self {
        Span {
            field,
            ncols,
            rows: Vec::new(),
        }
    }

    /// Reduces `v` against the span, returning the remainder.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let f = &self.field;
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if !f.is_zero(&v[*p]) {
                let c = v[*p].clone();
                for j in 0..self.ncols {
                    let t = f.mul(&c, &row[j]);
                    v[j] = f.sub(&v[j], &t);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let f = &self.field;
        self.reduce(v).iter().all(|x| f.is_zero(x))
    }

    /// Inserts `v`; returns true if it enlarged the span.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let f = self.field;
        let red = self.reduce(v);
        let Some(p) = red.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&red[p]);
        let row: Vec<Scalar> = red.iter().map(|x| f.mul(x, &inv)).collect();
        self.rows.push((p, row));
        self.rows.sort_by_key(|(p, _)| *p);
        true
    }
}
