//! Dense exact linear algebra over [`Scalar`]: row reduction, rank, solving, inverses.

use num::traits::{One, Zero};

use crate::scalar::Scalar;

pub type Matrix = Vec<Vec<Scalar>>;

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![Scalar::zero(); cols]; rows]
}

pub fn identity(n: usize) -> Matrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Scalar::one();
    }
    m
}

pub fn transpose(m: &Matrix) -> Matrix {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut out = zeros(n, m);
    for i in 0..n {
        for (l, a_il) in a[i].iter().enumerate().take(k) {
            if a_il.is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[l][j].is_zero() {
                    out[i][j] += &(a_il * &b[l][j]);
                }
            }
        }
    }
    out
}

pub fn is_square(m: &Matrix) -> bool {
    m.iter().all(|row| row.len() == m.len())
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for x in m[r].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &(&factor * p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    let mut work = m.clone();
    rref(&mut work).len()
}

/// Solves `a x = b`. Returns a particular solution (free variables set to zero)
/// together with a basis of the null space, or `None` when inconsistent.
pub fn solve(a: &Matrix, b: &[Scalar]) -> Option<(Vec<Scalar>, Vec<Vec<Scalar>>)> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![Scalar::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][cols].clone();
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let null = free
        .iter()
        .map(|&fc| {
            let mut v = vec![Scalar::zero(); cols];
            v[fc] = Scalar::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -&aug[r][fc];
            }
            v
        })
        .collect();
    Some((x, null))
}

pub fn inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn determinant(m: &Matrix) -> Scalar {
    let n = m.len();
    let mut work = m.clone();
    let mut det = Scalar::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !work[i][c].is_zero()) else {
            return Scalar::zero();
        };
        if p != c {
            work.swap(p, c);
            det = -det;
        }
        det = &det * &work[c][c];
        let inv = work[c][c].inv().expect("nonzero pivot");
        for i in c + 1..n {
            if work[i][c].is_zero() {
                continue;
            }
            let factor = &work[i][c] * &inv;
            for j in c..n {
                let d = &factor * &work[c][j];
                work[i][j] -= &d;
            }
        }
    }
    det
}
