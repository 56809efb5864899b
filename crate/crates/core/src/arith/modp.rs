//! Linear algebra over a prime field F_p with small p.

use super::{mod_inverse, pow_mod, prime_divisors};

#[derive(Debug, Clone, Copy)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b % self.p) % self.p
    }
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }
    pub fn inv(&self, a: u64) -> u64 {
        mod_inverse(a % self.p, self.p).expect("zero has no inverse")
    }
    pub fn from_i64(&self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    /// Smallest generator of the multiplicative group.
    pub fn primitive_root(&self) -> u64 {
        let order = self.p - 1;
        let factors = prime_divisors(order);
        (2..self.p)
            .find(|&g| factors.iter().all(|&q| pow_mod(g, order / q, self.p) != 1))
            .unwrap_or(1)
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(&self, m: &mut [Vec<u64>]) -> Vec<usize> {
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
            let Some(piv) = (r..rows).find(|&i| m[i][c] != 0) else {
                continue;
            };
            m.swap(r, piv);
            let inv = self.inv(m[r][c]);
            for x in m[r].iter_mut() {
                *x = self.mul(*x, inv);
            }
            let pivot_row = m[r].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i != r && row[c] != 0 {
                    let f = row[c];
                    for (x, &y) in row.iter_mut().zip(&pivot_row) {
                        *x = self.sub(*x, self.mul(f, y));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Basis of {x : m x = 0} as row vectors.
    pub fn kernel(&self, m: &[Vec<u64>], cols: usize) -> Vec<Vec<u64>> {
        let mut r = m.to_vec();
        let pivots = self.rref(&mut r);
        (0..cols)
            .filter(|c| !pivots.contains(c))
            .map(|f| {
                let mut v = vec![0u64; cols];
                v[f] = 1;
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = self.sub(0, r[row][f]);
                }
                v
            })
            .collect()
    }

    pub fn det(&self, m: &[Vec<u64>]) -> u64 {
        let n = m.len();
        let mut a = m.to_vec();
        let mut det = 1u64;
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| a[i][c] != 0) else {
                return 0;
            };
            if p != c {
                a.swap(p, c);
                det = self.sub(0, det);
            }
            det = self.mul(det, a[c][c]);
            let inv = self.inv(a[c][c]);
            for i in c + 1..n {
                if a[i][c] == 0 {
                    continue;
                }
                let f = self.mul(a[i][c], inv);
                for j in c..n {
                    let t = self.mul(f, a[c][j]);
                    a[i][j] = self.sub(a[i][j], t);
                }
            }
        }
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_basics() {
        let f = Fp { p: 31 };
        assert_eq!(f.primitive_root(), 3);
        assert_eq!(f.mul(f.inv(7), 7), 1);
        let m = vec![vec![1, 2, 3], vec![2, 4, 6]];
        let k = f.kernel(&m, 3);
        assert_eq!(k.len(), 2);
        for v in k {
            let s = (0..3).fold(0, |acc, j| f.add(acc, f.mul(m[0][j], v[j])));
            assert_eq!(s, 0);
        }
        assert_eq!(f.det(&[vec![2, 1], vec![1, 1]]), 1);
    }
}
