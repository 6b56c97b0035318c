//! Dense linear algebra over the table-driven finite fields: just enough
//! Gaussian elimination for frame solves, ranks and inverses.

use crate::algebra::fq::Fq;

pub type Mat = Vec<Vec<Fq>>;

pub fn zeros(q: u8, rows: usize, cols: usize) -> Mat {
    vec![vec![Fq::zero(q); cols]; rows]
}

pub fn identity(q: u8, n: usize) -> Mat {
    let mut m = zeros(q, n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Fq::one(q);
    }
    m
}

#[cfg(test)]
pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let q = a[0][0].q();
    let (ra, ca) = (a.len(), a[0].len());
    let cb = b[0].len();
    debug_assert_eq!(ca, b.len());
    let mut out = zeros(q, ra, cb);
    for i in 0..ra {
        for k in 0..ca {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..cb {
                out[i][j] = out[i][j].add(a[i][k].mul(b[k][j]));
            }
        }
    }
    out
}

pub fn rank(m: &Mat) -> usize {
    if m.is_empty() || m[0].is_empty() {
        return 0;
    }
    let mut a = m.clone();
    let (rows, cols) = (a.len(), a[0].len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].inv().unwrap();
        for j in 0..cols {
            a[r][j] = a[r][j].mul(inv);
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c];
                for j in 0..cols {
                    a[i][j] = a[i][j].sub(f.mul(a[r][j]));
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Inverse of a square matrix, or None when singular.
pub fn inverse(m: &Mat) -> Option<Mat> {
    let n = m.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let q = m[0][0].q();
    let mut a = m.clone();
    let mut inv = identity(q, n);
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        inv.swap(c, p);
        let piv = a[c][c].inv().unwrap();
        for j in 0..n {
            a[c][j] = a[c][j].mul(piv);
            inv[c][j] = inv[c][j].mul(piv);
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c];
                for j in 0..n {
                    a[i][j] = a[i][j].sub(f.mul(a[c][j]));
                    inv[i][j] = inv[i][j].sub(f.mul(inv[c][j]));
                }
            }
        }
    }
    Some(inv)
}

/// Solve A X = B column by column; A must have full column rank and the
/// system must be consistent, else None.
pub fn solve(a: &Mat, b: &Mat) -> Option<Mat> {
    let rows = a.len();
    if rows == 0 {
        return Some(Vec::new());
    }
    let q = a[0][0].q();
    let ca = a[0].len();
    let cb = b[0].len();
    // eliminate on the augmented matrix [A | B]
    let mut aug = zeros(q, rows, ca + cb);
    for i in 0..rows {
        for j in 0..ca {
            aug[i][j] = a[i][j];
        }
        for j in 0..cb {
            aug[i][ca + j] = b[i][j];
        }
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ca {
        let Some(p) = (r..rows).find(|&i| !aug[i][c].is_zero()) else { continue };
        aug.swap(r, p);
        let inv = aug[r][c].inv().unwrap();
        for j in 0..ca + cb {
            aug[r][j] = aug[r][j].mul(inv);
        }
        for i in 0..rows {
            if i != r && !aug[i][c].is_zero() {
                let f = aug[i][c];
                for j in 0..ca + cb {
                    aug[i][j] = aug[i][j].sub(f.mul(aug[r][j]));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if pivots.len() < ca {
        return None;
    }
    // consistency: rows below rank must have zero rhs
    for i in r..rows {
        for j in 0..cb {
            if !aug[i][ca + j].is_zero() {
                return None;
            }
        }
    }
    let mut x = zeros(q, ca, cb);
    for (row, &c) in pivots.iter().enumerate() {
        for j in 0..cb {
            x[c][j] = aug[row][ca + j];
        }
    }
    Some(x)
}
