//! The cyclotomic field Q(zeta_n) in power-basis coordinates 1, zeta, ...,
//! zeta^(phi(n)-1).

use super::Q;
use num_traits::{One, Zero};
use std::sync::Arc;

/// Integer coefficients of the n-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_poly(n: u64) -> Vec<i64> {
    // x^n - 1 divided by Phi_d for every proper divisor d.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            num = poly_div_exact(&num, &cyclotomic_poly(d));
        }
    }
    num
}

fn poly_div_exact(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead = *b.last().unwrap();
    let mut q = vec![0i64; r.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db] / lead;
        q[k] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[k + j] -= c * bj;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    for p in super::prime_divisors(n) {
        result = result / p * (p - 1);
    }
    result
}

#[derive(Debug)]
pub struct CyclotomicField {
    pub level: u64,
    pub degree: usize,
    /// Power-basis coordinates of zeta^k for k = 0..level.
    powers: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cyclo {
    pub coeffs: Vec<Q>,
}

impl CyclotomicField {
    pub fn new(level: u64) -> Arc<Self> {
        let level = level.max(1);
        let phi = cyclotomic_poly(level);
        let degree = phi.len() - 1;
        let mut powers = Vec::with_capacity(level as usize);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        for _ in 0..level {
            powers.push(cur.clone());
            // multiply by x and reduce by the monic Phi
            let top = cur[degree - 1];
            let mut next = vec![0i64; degree];
            for k in (1..degree).rev() {
                next[k] = cur[k - 1];
            }
            for k in 0..degree {
                next[k] -= top * phi[k];
            }
            cur = next;
        }
        Arc::new(CyclotomicField {
            level,
            degree,
            powers,
        })
    }

    pub fn zero(&self) -> Cyclo {
        Cyclo {
            coeffs: vec![Q::zero(); self.degree],
        }
    }

    pub fn from_q(&self, x: Q) -> Cyclo {
        let mut c = self.zero();
        c.coeffs[0] = x;
        c
    }

    /// zeta^k (k taken modulo the level).
    pub fn root_power(&self, k: i64) -> Cyclo {
        let k = k.rem_euclid(self.level as i64) as usize;
        Cyclo {
            coeffs: self.powers[k]
                .iter()
                .map(|&x| Q::from_integer(x.into()))
                .collect(),
        }
    }

    /// Sum of m_s zeta^s over s.
    pub fn from_root_multiset(&self, counts: &[(i64, u64)]) -> Cyclo {
        let mut acc = vec![0i64; self.degree];
        for &(k, m) in counts {
            let k = k.rem_euclid(self.level as i64) as usize;
            for (a, &b) in acc.iter_mut().zip(&self.powers[k]) {
                *a += b * m as i64;
            }
        }
        Cyclo {
            coeffs: acc.into_iter().map(|x| Q::from_integer(x.into())).collect(),
        }
    }

    pub fn mul(&self, a: &Cyclo, b: &Cyclo) -> Cyclo {
        let mut out = self.zero();
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                let k = (i + j) % self.level as usize;
                for (o, &pw) in out.coeffs.iter_mut().zip(&self.powers[k]) {
                    if pw != 0 {
                        *o += &xy * Q::from_integer(pw.into());
                    }
                }
            }
        }
        out
    }
}

impl Cyclo {
    pub fn add(&self, other: &Cyclo) -> Cyclo {
        Cyclo {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, s: &Q) -> Cyclo {
        Cyclo {
            coeffs: self.coeffs.iter().map(|a| a * s).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The rational value, when the element lies in Q.
    pub fn as_rational(&self) -> Option<Q> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Integer coordinates, when all coordinates are integers.
    pub fn int_coords(&self) -> Option<Vec<i64>> {
        self.coeffs
            .iter()
            .map(|c| {
                if c.is_integer() {
                    i64::try_from(c.to_integer()).ok()
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q_int;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(euler_phi(30), 8);
    }

    #[test]
    fn roots_sum_to_zero() {
        for n in [2u64, 3, 5, 12, 30] {
            let f = CyclotomicField::new(n);
            let mut s = f.zero();
            for k in 0..n as i64 {
                s = s.add(&f.root_power(k));
            }
            assert!(s.is_zero(), "level {n}");
            let z = f.root_power(1);
            let mut p = f.from_q(q_int(1));
            for _ in 0..n {
                p = f.mul(&p, &z);
            }
            assert!(p.is_one());
        }
    }

    #[test]
    fn golden_ratio_in_level_five() {
        // (1 + sqrt5)/2 = -(zeta^2 + zeta^3) ; its square equals itself plus one.
        let f = CyclotomicField::new(5);
        let g = f.from_root_multiset(&[(2, 1), (3, 1)]).scale(&q_int(-1));
        let g2 = f.mul(&g, &g);
        assert_eq!(g2, g.add(&f.from_q(q_int(1))));
    }
}
