//! Character tables by the Burnside–Dixon method: split the class-sum
//! algebra over a prime field containing the exponent-th roots of unity, then
//! lift each value to cyclotomic coordinates from its eigenvalue multiset.

use std::cmp::Ordering;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::arith::cyclotomic::{Cyclo, CyclotomicField};
use crate::arith::modp::Fp;
use crate::arith::{gcd, is_prime, pow_mod, Q};
use crate::error::{Error, Result};
use crate::group::Group;

#[derive(Debug, Clone)]
pub struct CharacterTable {
    pub order: usize,
    pub exponent: u64,
    pub field: Arc<CyclotomicField>,
    pub class_reps: Vec<usize>,
    pub class_sizes: Vec<usize>,
    /// Class of `g⁻¹` for a representative `g` of each class.
    pub inverse_class: Vec<usize>,
    /// `power_map[t][k]` is the class of `g_k^t`, for `t` in `0..exponent`.
    pub power_map: Vec<Vec<usize>>,
    /// Rows are irreducible characters, columns are classes. Row 0 is trivial;
    /// the rest are sorted by degree and then by value coordinates.
    pub characters: Vec<Vec<Cyclo>>,
    pub degrees: Vec<u64>,
}

pub fn character_table(g: &Group, cap: usize) -> Result<CharacterTable> {
    let n = g.order();
    if n > cap {
        return Err(Error::CapExceeded { order: n, cap });
    }
    let classes = g.classes();
    let r = classes.len();
    let e = g.exponent() as u64;
    let class_reps: Vec<usize> = classes.iter().map(|c| c.representative).collect();
    let class_sizes: Vec<usize> = classes.iter().map(|c| c.size()).collect();
    let inverse_class: Vec<usize> = class_reps.iter().map(|&x| g.class_of(g.inv(x))).collect();
    let power_map: Vec<Vec<usize>> = (0..e as i64)
        .map(|t| {
            class_reps
                .iter()
                .map(|&x| g.class_of(g.pow(x, t)))
                .collect()
        })
        .collect();

    let p = choose_prime(e, n);
    let f = Fp { p };

    // a[j][k][l] = #{x in C_j : x⁻¹ g_l in C_k}
    let mut a = vec![vec![vec![0u64; r]; r]; r];
    for (j, cj) in classes.iter().enumerate() {
        for &x in &cj.members {
            for (l, &gl) in class_reps.iter().enumerate() {
                a[j][g.class_of(g.mul(g.inv(x), gl))][l] += 1;
            }
        }
    }

    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..r)
        .map(|i| {
            let mut v = vec![0u64; r];
            v[i] = 1;
            v
        })
        .collect()];
    for aj in a.iter().skip(1) {
        if spaces.len() == r {
            break;
        }
        let mj: Vec<Vec<u64>> = aj
            .iter()
            .map(|row| row.iter().map(|&x| x % p).collect())
            .collect();
        let mut next = Vec::new();
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
                continue;
            }
            next.extend(split_space(&f, &mj, &space)?);
        }
        spaces = next;
    }
    if spaces.len() != r || spaces.iter().any(|s| s.len() != 1) {
        return Err(Error::InvariantViolated(
            "class sums failed to separate characters".into(),
        ));
    }

    let field = CyclotomicField::new(e);
    let root = pow_mod(f.primitive_root(), (p - 1) / e, p);
    let mut rows: Vec<(u64, Vec<Cyclo>)> = Vec::with_capacity(r);
    for space in &spaces {
        let w0 = &space[0];
        let scale = f.inv(w0[0]);
        let w: Vec<u64> = w0.iter().map(|&x| f.mul(x, scale)).collect();
        let mut s = 0u64;
        for k in 0..r {
            let term = f.mul(
                f.mul(w[k], w[inverse_class[k]]),
                f.inv(class_sizes[k] as u64 % p),
            );
            s = f.add(s, term);
        }
        let d2 = f.mul(n as u64 % p, f.inv(s));
        let d = (1..=p / 2)
            .find(|&d| f.mul(d, d) == d2)
            .ok_or_else(|| Error::InvariantViolated("degree is not a square root".into()))?;
        let modp_values: Vec<u64> = (0..r)
            .map(|k| f.mul(f.mul(w[k], d), f.inv(class_sizes[k] as u64 % p)))
            .collect();
        let mut values = Vec::with_capacity(r);
        for k in 0..r {
            let o = g.element_order(class_reps[k]) as u64;
            let zo = pow_mod(root, e / o, p);
            let inv_o = f.inv(o % p);
            let mut counts = Vec::new();
            let mut total = 0u64;
            for s_exp in 0..o {
                let mut m = 0u64;
                for t in 0..o {
                    let chi = modp_values[power_map[t as usize][k]];
                    let z = pow_mod(zo, (o - (s_exp * t) % o) % o, p);
                    m = f.add(m, f.mul(chi, z));
                }
                let m = f.mul(m, inv_o);
                if m > d {
                    return Err(Error::InvariantViolated(
                        "eigenvalue multiplicity exceeds degree".into(),
                    ));
                }
                total += m;
                if m > 0 {
                    counts.push(((s_exp * (e / o)) as i64, m));
                }
            }
            if total != d {
                return Err(Error::InvariantViolated(
                    "eigenvalue multiplicities do not sum to the degree".into(),
                ));
            }
            values.push(field.from_root_multiset(&counts));
        }
        rows.push((d, values));
    }
    rows.sort_by(|x, y| row_key_cmp(x, y));
    let degrees = rows.iter().map(|(d, _)| *d).collect();
    let characters = rows.into_iter().map(|(_, v)| v).collect();
    Ok(CharacterTable {
        order: n,
        exponent: e,
        field,
        class_reps,
        class_sizes,
        inverse_class,
        power_map,
        characters,
        degrees,
    })
}

fn is_trivial_row(row: &[Cyclo]) -> bool {
    row.iter().all(|v| v.is_one())
}

fn row_key_cmp(x: &(u64, Vec<Cyclo>), y: &(u64, Vec<Cyclo>)) -> Ordering {
    is_trivial_row(&y.1)
        .cmp(&is_trivial_row(&x.1))
        .then(x.0.cmp(&y.0))
        .then_with(|| cmp_values(&x.1, &y.1))
}

/// Lexicographic order on value vectors in cyclotomic coordinates.
pub fn cmp_values(a: &[Cyclo], b: &[Cyclo]) -> Ordering {
    for (u, v) in a.iter().zip(b) {
        for (x, y) in u.coeffs.iter().zip(&v.coeffs) {
            match x.cmp(y) {
                Ordering::Equal => {}
                o => return o,
            }
        }
    }
    Ordering::Equal
}

fn choose_prime(e: u64, n: usize) -> u64 {
    let mut p = e + 1;
    loop {
        if is_prime(p) && p * p > 4 * n as u64 {
            return p;
        }
        p += e;
    }
}

/// Splits a subspace invariant under `m` into eigenspaces of `m`.
fn split_space(f: &Fp, m: &[Vec<u64>], basis: &[Vec<u64>]) -> Result<Vec<Vec<Vec<u64>>>> {
    let r = m.len();
    let d = basis.len();
    let images: Vec<Vec<u64>> = basis
        .iter()
        .map(|b| {
            (0..r)
                .map(|k| (0..r).fold(0u64, |acc, l| f.add(acc, f.mul(m[k][l], b[l]))))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut found = 0;
    for lambda in 0..f.p {
        let mat: Vec<Vec<u64>> = (0..r)
            .map(|k| {
                (0..d)
                    .map(|i| f.sub(images[i][k], f.mul(lambda, basis[i][k])))
                    .collect()
            })
            .collect();
        let ker = f.kernel(&mat, d);
        if ker.is_empty() {
            continue;
        }
        found += ker.len();
        let vectors = ker
            .iter()
            .map(|c| {
                (0..r)
                    .map(|k| (0..d).fold(0u64, |acc, i| f.add(acc, f.mul(c[i], basis[i][k]))))
                    .collect()
            })
            .collect();
        out.push(vectors);
        if found == d {
            return Ok(out);
        }
    }
    Err(Error::InvariantViolated(
        "class matrix is not diagonalizable".into(),
    ))
}

impl CharacterTable {
    pub fn num_classes(&self) -> usize {
        self.class_reps.len()
    }

    /// `⟨a, b⟩ = (1/|G|) Σ_k |C_k| a(g_k) b(g_k⁻¹)`.
    pub fn inner(&self, a: &[Cyclo], b: &[Cyclo]) -> Cyclo {
        let mut acc = self.field.zero();
        for k in 0..self.num_classes() {
            let t = self.field.mul(&a[k], &b[self.inverse_class[k]]);
            acc = acc.add(&t.scale(&Q::from_integer((self.class_sizes[k] as i64).into())));
        }
        acc.scale(&Q::new(1.into(), (self.order as i64).into()))
    }

    /// Inner product of class functions with rational values.
    pub fn inner_rational(&self, a: &[Q], b: &[Q]) -> Q {
        let mut acc = Q::zero();
        for k in 0..self.num_classes() {
            acc += &a[k]
                * &b[self.inverse_class[k]]
                * Q::from_integer((self.class_sizes[k] as i64).into());
        }
        acc / Q::from_integer((self.order as i64).into())
    }

    /// Inner product of a rational class function with a character row.
    pub fn inner_with_row(&self, a: &[Q], row: usize) -> Q {
        let b: Vec<Cyclo> = a.iter().map(|x| self.field.from_q(x.clone())).collect();
        self.inner(&b, &self.characters[row])
            .as_rational()
            .expect("inner product of characters is rational")
    }

    /// Row index of `χ^(k)`, with `χ^(k)(g) = χ(g^k)`.
    pub fn galois_conjugate(&self, row: usize, k: u64) -> usize {
        let t = (k % self.exponent) as usize;
        let conj: Vec<Cyclo> = (0..self.num_classes())
            .map(|c| self.characters[row][self.power_map[t][c]].clone())
            .collect();
        self.characters
            .iter()
            .position(|r| *r == conj)
            .expect("Galois conjugate of a character is a character")
    }

    /// Galois orbits of rows, each sorted, ordered by smallest row.
    pub fn galois_orbits(&self) -> Vec<Vec<usize>> {
        let units: Vec<u64> = (1..=self.exponent)
            .filter(|&k| gcd(k, self.exponent) == 1)
            .collect();
        let mut assigned = vec![false; self.characters.len()];
        let mut orbits = Vec::new();
        for row in 0..self.characters.len() {
            if assigned[row] {
                continue;
            }
            let mut orbit: Vec<usize> = units
                .iter()
                .map(|&k| self.galois_conjugate(row, k))
                .collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &o in &orbit {
                assigned[o] = true;
            }
            orbits.push(orbit);
        }
        orbits
    }

    /// Exact check of row orthogonality, degrees and the degree sum.
    pub fn check(&self) -> Result<()> {
        let k = self.characters.len();
        if k != self.num_classes() {
            return Err(Error::InvariantViolated(
                "row count differs from class count".into(),
            ));
        }
        let mut sum = 0u64;
        for a in 0..k {
            let deg = self.characters[a][0]
                .as_rational()
                .filter(|d| d.is_integer() && *d > Q::zero())
                .ok_or_else(|| {
                    Error::InvariantViolated(format!("row {a} has a non-integral degree"))
                })?;
            if deg != Q::from_integer((self.degrees[a] as i64).into()) {
                return Err(Error::InvariantViolated(format!("row {a} degree mismatch")));
            }
            sum += self.degrees[a] * self.degrees[a];
            for b in 0..k {
                let ip = self.inner(&self.characters[a], &self.characters[b]);
                let expected = if a == b { Q::one() } else { Q::zero() };
                if ip.as_rational() != Some(expected) {
                    return Err(Error::InvariantViolated(format!(
                        "rows {a} and {b} are not orthonormal"
                    )));
                }
            }
        }
        if sum != self.order as u64 {
            return Err(Error::InvariantViolated(
                "squared degrees do not sum to the group order".into(),
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::builtin::builtin;

    #[test]
    fn small_tables() {
        let c2 = character_table(&builtin("C2").unwrap(), 200).unwrap();
        c2.check().unwrap();
        assert_eq!(
            c2.characters[1][1].as_rational(),
            Some(Q::from_integer((-1).into()))
        );
        let s3 = character_table(&builtin("S3").unwrap(), 200).unwrap();
        s3.check().unwrap();
        assert_eq!(s3.degrees, vec![1, 1, 2]);
        let c5 = character_table(&builtin("C5").unwrap(), 200).unwrap();
        c5.check().unwrap();
        assert_eq!(c5.galois_orbits().len(), 2);
    }

    #[test]
    fn a5_golden_ratio_rows() {
        let t = character_table(&builtin("A5").unwrap(), 200).unwrap();
        t.check().unwrap();
        assert_eq!(t.degrees, vec![1, 3, 3, 4, 5]);
        let orbits = t.galois_orbits();
        assert_eq!(orbits, vec![vec![0], vec![1, 2], vec![3], vec![4]]);
        assert!(t.characters[1].iter().any(|v| v.as_rational().is_none()));
    }
}
