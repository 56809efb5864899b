//! Dense matrices over Q with row-reduction based rank, kernels and solves.

use super::Q;
use num_traits::{One, Zero};

pub type QMat = Vec<Vec<Q>>;

pub fn zeros(rows: usize, cols: usize) -> QMat {
    vec![vec![Q::zero(); cols]; rows]
}

pub fn identity(n: usize) -> QMat {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Q::one();
    }
    m
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(m: &mut QMat) -> Vec<usize> {
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
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, piv);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let (top, bottom) = if i < r {
                    let (a, b) = m.split_at_mut(r);
                    (&mut a[i], &b[0])
                } else {
                    let (a, b) = m.split_at_mut(i);
                    (&mut b[0], &a[r])
                };
                for (x, y) in top.iter_mut().zip(bottom.iter()) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &QMat) -> usize {
    let mut c = m.clone();
    rref(&mut c).len()
}

/// Basis of the right kernel {x : m x = 0}.
pub fn kernel(m: &QMat, cols: usize) -> QMat {
    let mut r = m.clone();
    let pivots = rref(&mut r);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); cols];
            v[f] = Q::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r[row][f].clone();
            }
            v
        })
        .collect()
}

/// Solve x · basis = target for row vectors, when target lies in the row
/// span of `basis` (rows assumed independent). Returns coordinates.
pub fn solve_in_span(basis: &QMat, target: &[Q]) -> Option<Vec<Q>> {
    let k = basis.len();
    let n = target.len();
    // Columns: one per basis vector, plus the target; rows: coordinates.
    let mut aug = zeros(n, k + 1);
    for (j, b) in basis.iter().enumerate() {
        for i in 0..n {
            aug[i][j] = b[i].clone();
        }
    }
    for i in 0..n {
        aug[i][k] = target[i].clone();
    }
    let pivots = rref(&mut aug);
    if pivots.contains(&k) {
        return None;
    }
    let mut x = vec![Q::zero(); k];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[row][k].clone();
    }
    Some(x)
}

pub fn determinant(m: &QMat) -> Q {
    let n = m.len();
    let mut a = m.clone();
    let mut det = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        let inv = a[c][c].recip();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            for j in c..n {
                let t = &f * &a[c][j];
                a[i][j] -= t;
            }
        }
    }
    det
}

pub fn inverse(m: &QMat) -> Option<QMat> {
    let n = m.len();
    let mut aug = zeros(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug[i][j] = m[i][j].clone();
        }
        aug[i][n + i] = Q::one();
    }
    let piv = rref(&mut aug);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_mul(a: &QMat, b: &QMat) -> QMat {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut out = zeros(n, m);
    for i in 0..n {
        for t in 0..k {
            if a[i][t].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[t][j].is_zero() {
                    out[i][j] += &a[i][t] * &b[t][j];
                }
            }
        }
    }
    out
}

pub fn transpose(a: &QMat) -> QMat {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len())
        .map(|j| a.iter().map(|r| r[j].clone()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{q_frac, q_int};

    fn m(rows: &[&[i64]]) -> QMat {
        rows.iter()
            .map(|r| r.iter().map(|&x| q_int(x)).collect())
            .collect()
    }

    #[test]
    fn rank_and_kernel() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&a), 2);
        let k = kernel(&a, 3);
        assert_eq!(k.len(), 1);
        let prod = mat_mul(&a, &transpose(&k));
        assert!(prod.iter().all(|r| r.iter().all(|x| x.is_zero())));
    }

    #[test]
    fn det_and_inverse() {
        let a = m(&[&[2, 1], &[1, 1]]);
        assert_eq!(determinant(&a), q_int(1));
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv), identity(2));
        let s = m(&[&[1, 2], &[2, 4]]);
        assert!(inverse(&s).is_none());
        assert_eq!(determinant(&m(&[&[0, 3], &[2, 0]])), q_int(-6));
    }

    #[test]
    fn span_solve() {
        let basis = m(&[&[1, 0, 1], &[0, 2, 0]]);
        let t = vec![q_int(3), q_int(1), q_int(3)];
        assert_eq!(
            solve_in_span(&basis, &t),
            Some(vec![q_int(3), q_frac(1, 2)])
        );
        assert!(solve_in_span(&basis, &[q_int(1), q_int(0), q_int(0)]).is_none());
    }
}
