//! Integer Hermite and Smith normal forms with unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type ZMat = Vec<Vec<BigInt>>;

pub fn zidentity(n: usize) -> ZMat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// Row-style Hermite basis of the Z-span of `rows`: echelon, positive pivots,
/// entries above each pivot reduced into [0, pivot).
pub fn hnf_rows(rows: &[Vec<BigInt>]) -> ZMat {
    let mut a: ZMat = rows.to_vec();
    let k = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..n {
        if r == k {
            break;
        }
        loop {
            // Smallest nonzero absolute value in column c among rows r.. .
            let best = (r..k)
                .filter(|&i| !a[i][c].is_zero())
                .min_by(|&i, &j| a[i][c].abs().cmp(&a[j][c].abs()));
            let Some(b) = best else { break };
            a.swap(r, b);
            let mut done = true;
            for i in r + 1..k {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                let src = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(src.iter()) {
                    *x -= &q * y;
                }
                if !a[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < k && !a[r][c].is_zero() {
            if a[r][c].is_negative() {
                for x in a[r].iter_mut() {
                    *x = -x.clone();
                }
            }
            pivots.push(c);
            r += 1;
        }
    }
    a.truncate(r);
    for (row, &c) in pivots.iter().enumerate() {
        for i in 0..row {
            let q = a[i][c].div_floor(&a[row][c]);
            if !q.is_zero() {
                let src = a[row].clone();
                for (x, y) in a[i].iter_mut().zip(src.iter()) {
                    *x -= &q * y;
                }
            }
        }
    }
    a
}

pub struct Smith {
    /// Diagonal entries d_1 | d_2 | ... (length min(rows, cols)), nonnegative.
    pub diag: Vec<BigInt>,
    /// Row transform, `u * m * v == diag`.
    pub u: ZMat,
    pub v: ZMat,
}

pub fn smith(m: &[Vec<BigInt>]) -> Smith {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut a: ZMat = m.to_vec();
    let mut u = zidentity(rows);
    let mut v = zidentity(cols);
    let steps = rows.min(cols);
    for t in 0..steps {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !a[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            a.swap(t, bi);
            u.swap(t, bi);
            for row in a.iter_mut() {
                row.swap(t, bj);
            }
            for row in v.iter_mut() {
                row.swap(t, bj);
            }
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                row_sub(&mut a, i, t, &q);
                row_sub(&mut u, i, t, &q);
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                col_sub(&mut a, j, t, &q);
                col_sub(&mut v, j, t, &q);
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Divisibility: fold any offending row into row t and retry.
            let mut offending = None;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(&a[i][j] % &a[t][t]).is_zero() {
                        offending = Some(i);
                        break 'scan;
                    }
                }
            }
            match offending {
                Some(i) => {
                    let one = -BigInt::one();
                    row_sub(&mut a, t, i, &one);
                    row_sub(&mut u, t, i, &one);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
    }
    let diag = (0..steps).map(|i| a[i][i].clone()).collect();
    Smith { diag, u, v }
}

/// row_i -= q * row_j
fn row_sub(a: &mut ZMat, i: usize, j: usize, q: &BigInt) {
    let src = a[j].clone();
    for (x, y) in a[i].iter_mut().zip(src.iter()) {
        *x -= q * y;
    }
}

/// col_i -= q * col_j
fn col_sub(a: &mut ZMat, i: usize, j: usize, q: &BigInt) {
    for row in a.iter_mut() {
        let y = row[j].clone();
        row[i] -= q * y;
    }
}

pub fn zmul(a: &ZMat, b: &ZMat) -> ZMat {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![BigInt::zero(); m]; n];
    for i in 0..n {
        for t in 0..k {
            if a[i][t].is_zero() {
                continue;
            }
            for j in 0..m {
                out[i][j] += &a[i][t] * &b[t][j];
            }
        }
    }
    out
}

/// Inverse of a unimodular integer matrix.
pub fn unimodular_inverse(m: &ZMat) -> ZMat {
    use super::qmat;
    use super::Q;
    let qm: qmat::QMat = m
        .iter()
        .map(|r| r.iter().map(|x| Q::from_integer(x.clone())).collect())
        .collect();
    let inv = qmat::inverse(&qm).expect("unimodular matrix is invertible");
    inv.into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| {
                    assert!(x.is_integer(), "inverse is not integral");
                    x.to_integer()
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(rows: &[&[i64]]) -> ZMat {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn smith_of_small_matrix() {
        let m = z(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = smith(&m);
        let d: Vec<i64> = s.diag.iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(d, vec![2, 6, 12]);
        let prod = zmul(&zmul(&s.u, &m), &s.v);
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j {
                    s.diag[i].clone()
                } else {
                    BigInt::zero()
                };
                assert_eq!(prod[i][j], expect);
            }
        }
    }

    #[test]
    fn hermite_basis() {
        let rows = z(&[&[4, 6], &[6, 9], &[2, 3]]);
        let h = hnf_rows(&rows);
        assert_eq!(h, z(&[&[2, 3]]));
        let h2 = hnf_rows(&z(&[&[3, 1], &[0, 2]]));
        assert_eq!(h2.len(), 2);
        let det = &h2[0][0] * &h2[1][1];
        assert_eq!(det, BigInt::from(6));
    }
}
