//! Finite abelian groups as products of cyclic factors, with elements
//! encoded as mixed-radix indices.

use crate::arith::{gcd, lcm};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    /// Orders of the cyclic factors, in the order given.
    pub orders: Vec<u64>,
}

impl AbelianGroup {
    pub fn new(orders: Vec<u64>) -> AbelianGroup {
        AbelianGroup { orders }
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn order(&self) -> u128 {
        self.orders.iter().map(|&d| d as u128).product()
    }

    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |a, &d| lcm(a, d))
    }

    /// Element count as `usize`, for groups small enough to enumerate.
    pub fn size(&self) -> usize {
        self.order() as usize
    }

    pub fn index(&self, x: &[u64]) -> usize {
        let mut idx = 0usize;
        for (k, &d) in self.orders.iter().enumerate().rev() {
            idx = idx * d as usize + x[k] as usize;
        }
        idx
    }

    pub fn element(&self, mut idx: usize) -> Vec<u64> {
        self.orders
            .iter()
            .map(|&d| {
                let c = (idx % d as usize) as u64;
                idx /= d as usize;
                c
            })
            .collect()
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter()
            .zip(y)
            .zip(&self.orders)
            .map(|((a, b), d)| (a + b) % d)
            .collect()
    }

    pub fn scale(&self, k: i64, x: &[u64]) -> Vec<u64> {
        x.iter()
            .zip(&self.orders)
            .map(|(&a, &d)| ((k.rem_euclid(d as i64) as u128 * a as u128) % d as u128) as u64)
            .collect()
    }

    pub fn is_zero(x: &[u64]) -> bool {
        x.iter().all(|&a| a == 0)
    }

    pub fn element_order(&self, x: &[u64]) -> u64 {
        x.iter()
            .zip(&self.orders)
            .fold(1, |acc, (&a, &d)| lcm(acc, d / gcd(a, d)))
    }

    /// Canonical invariant factors `d_1 | d_2 | …`, dropping trivial ones.
    pub fn invariant_factors(&self) -> Vec<u64> {
        let mut prime_powers: std::collections::BTreeMap<u64, Vec<u64>> = Default::default();
        for &d in &self.orders {
            let mut n = d;
            for p in crate::arith::prime_divisors(d) {
                let mut q = 1;
                while n % p == 0 {
                    n /= p;
                    q *= p;
                }
                prime_powers.entry(p).or_default().push(q);
            }
        }
        let width = prime_powers.values().map(|v| v.len()).max().unwrap_or(0);
        let mut factors = vec![1u64; width];
        for v in prime_powers.values_mut() {
            v.sort_unstable_by(|a, b| b.cmp(a));
            for (k, q) in v.iter().enumerate() {
                factors[width - 1 - k] *= q;
            }
        }
        factors
    }

    /// Exponents `a` with `p^a` running over the p-primary cyclic factors.
    pub fn p_exponents(&self, p: u64) -> Vec<u32> {
        let mut out = Vec::new();
        for &d in &self.orders {
            let mut a = 0;
            let mut n = d;
            while n % p == 0 {
                n /= p;
                a += 1;
            }
            if a > 0 {
                out.push(a);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indexing_and_factors() {
        let a = AbelianGroup::new(vec![4, 6]);
        assert_eq!(a.order(), 24);
        for i in 0..24 {
            assert_eq!(a.index(&a.element(i)), i);
        }
        assert_eq!(a.invariant_factors(), vec![2, 12]);
        assert_eq!(a.element_order(&[1, 1]), 12);
        assert_eq!(AbelianGroup::new(vec![9, 3]).p_exponents(3), vec![2, 1]);
        assert_eq!(
            AbelianGroup::new(vec![]).invariant_factors(),
            Vec::<u64>::new()
        );
    }
}
