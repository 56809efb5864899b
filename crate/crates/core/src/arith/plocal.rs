//! Lattices over the local ring Z_(p): echelon bases and relation modules
//! computed with unimodular row operations only.

use super::qmat::{identity, QMat};
use super::{val, Q};
use num_traits::Zero;

pub struct LocalEchelon {
    /// Z_(p)-basis of the module generated by the input rows.
    pub basis: QMat,
    /// Row `i < rank` expresses `basis[i]` in the input rows; rows from `rank`
    /// on form a Z_(p)-basis of the relations among the input rows.
    pub transform: QMat,
    pub rank: usize,
}

impl LocalEchelon {
    pub fn relations(&self) -> &[Vec<Q>] {
        &self.transform[self.rank..]
    }
}

/// Echelon form of the Z_(p)-module spanned by `rows`.
pub fn echelon(rows: &[Vec<Q>], p: u64) -> LocalEchelon {
    let k = rows.len();
    let n = rows.first().map_or(0, |r| r.len());
    let mut a: QMat = rows.to_vec();
    let mut t = identity(k);
    let mut r = 0;
    for c in 0..n {
        if r == k {
            break;
        }
        // Pivot: minimal valuation in column c among remaining rows.
        let mut best: Option<(usize, i64)> = None;
        for (i, row) in a.iter().enumerate().skip(r) {
            if let Some(v) = val(&row[c], p) {
                if best.is_none_or(|(_, bv)| v < bv) {
                    best = Some((i, v));
                }
            }
        }
        let Some((piv, _)) = best else { continue };
        a.swap(r, piv);
        t.swap(r, piv);
        let pivot = a[r][c].clone();
        for i in r + 1..k {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &pivot;
            let (top, rest) = a.split_at_mut(i);
            let src = &top[r];
            for (x, y) in rest[0].iter_mut().zip(src.iter()) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            let (ttop, trest) = t.split_at_mut(i);
            let tsrc = &ttop[r];
            for (x, y) in trest[0].iter_mut().zip(tsrc.iter()) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
    }
    a.truncate(r);
    LocalEchelon {
        basis: a,
        transform: t,
        rank: r,
    }
}

/// Z_(p)-basis of {c in Z_(p)^r : sum_j c_j gens[j] = 0}.
pub fn relation_basis(gens: &[Vec<Q>], p: u64) -> QMat {
    echelon(gens, p).relations().to_vec()
}

/// Coordinates of `target` in an echelon basis over Q, if it lies in the span.
pub fn coordinates(basis: &QMat, target: &[Q]) -> Option<Vec<Q>> {
    super::qmat::solve_in_span(basis, target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{is_p_integral, q_frac, q_int, qmat};

    #[test]
    fn echelon_of_local_lattice() {
        // Z_(2)-span of (2,0),(0,2),(1,1): index 2 in Z_(2)^2.
        let rows = vec![
            vec![q_int(2), q_int(0)],
            vec![q_int(0), q_int(2)],
            vec![q_int(1), q_int(1)],
        ];
        let e = echelon(&rows, 2);
        assert_eq!(e.rank, 2);
        let det = qmat::determinant(&e.basis);
        assert_eq!(val(&det, 2), Some(1));
        // At p = 3 the same generators span everything.
        let e3 = echelon(&rows, 3);
        assert_eq!(val(&qmat::determinant(&e3.basis), 3), Some(0));
        // Transform entries are p-integral and reproduce the basis.
        for (i, b) in e.basis.iter().enumerate() {
            let mut acc = vec![q_int(0), q_int(0)];
            for (j, r) in rows.iter().enumerate() {
                assert!(is_p_integral(&e.transform[i][j], 2));
                for c in 0..2 {
                    acc[c] += &e.transform[i][j] * &r[c];
                }
            }
            assert_eq!(&acc, b);
        }
    }

    #[test]
    fn relations_are_saturated() {
        // 3*(1/3) - 1 = 0; relation (3,-1) is not primitive at 3 but (1, -1/3) is
        // not 3-integral, so the saturated basis is a unit multiple of (3,-1).
        let gens = vec![vec![q_frac(1, 3)], vec![q_int(1)]];
        let rel = relation_basis(&gens, 3);
        assert_eq!(rel.len(), 1);
        let r = &rel[0];
        let s = &r[0] * &gens[0][0] + &r[1] * &gens[1][0];
        assert!(s.is_zero());
        assert!(r.iter().all(|x| is_p_integral(x, 3)));
        assert!(r.iter().any(|x| val(x, 3) == Some(0)));
    }
}
