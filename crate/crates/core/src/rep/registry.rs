//! Splitness registry for the shipped groups, and integral representations
//! that confirm it for the components with center Q.
//!
//! A registry entry lists `(degree, center degree)` for every component. It is
//! honored only when the group's name, order and computed components all match.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::algebra;
use super::components::{AlgebraComponent, Decomposition};
use crate::arith::cyclotomic::euler_phi;
use crate::arith::qmat::solve_in_span;
use crate::arith::snf::hnf_rows;
use crate::arith::Q;
use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};

const ENTRIES: &[(&str, usize, &[(u64, usize)])] = &[
    ("V4", 4, &[(1, 1), (1, 1), (1, 1), (1, 1)]),
    ("S3", 6, &[(1, 1), (1, 1), (2, 1)]),
    ("D4", 8, &[(1, 1), (1, 1), (1, 1), (1, 1), (2, 1)]),
    ("A4", 12, &[(1, 1), (1, 2), (3, 1)]),
    ("S4", 24, &[(1, 1), (1, 1), (2, 1), (3, 1), (3, 1)]),
    ("A5", 60, &[(1, 1), (3, 2), (4, 1), (5, 1)]),
    (
        "S5",
        120,
        &[(1, 1), (1, 1), (4, 1), (4, 1), (5, 1), (5, 1), (6, 1)],
    ),
];

fn signature(g: &Group) -> Option<Vec<(u64, usize)>> {
    if let Some((_, order, sig)) = ENTRIES.iter().find(|(n, _, _)| *n == g.name()) {
        return (*order == g.order()).then(|| sig.to_vec());
    }
    // Cn for n <= 12: one linear component per divisor d with center Q(ζ_d)
    let n: usize = g.name().strip_prefix('C')?.parse().ok()?;
    if n == 0 || n > 12 || n != g.order() {
        return None;
    }
    Some(
        (1..=n)
            .filter(|d| n % d == 0)
            .map(|d| (1, euler_phi(d as u64) as usize))
            .collect(),
    )
}

/// True when the group is a registry entry matching the computed components.
pub fn lookup(g: &Group, components: &[AlgebraComponent]) -> bool {
    let Some(mut expected) = signature(g) else {
        return false;
    };
    let mut actual: Vec<(u64, usize)> = components.iter().map(|c| (c.h, c.center_degree)).collect();
    expected.sort_unstable();
    actual.sort_unstable();
    expected == actual
}

/// Integer matrices for every element acting on a Γ-stable lattice in the
/// representation affording `φ_i`. Columns are coordinates: `M(xy) = M(x)M(y)`.
#[derive(Debug, Clone)]
pub struct IntegralRep {
    pub dim: usize,
    pub matrices: Vec<Vec<Vec<i64>>>,
}

impl IntegralRep {
    pub fn matrix(&self, x: usize) -> &Vec<Vec<i64>> {
        &self.matrices[x]
    }
}

/// Subgroups generated by at most two elements, largest first.
fn small_subgroups(g: &Group) -> Vec<Subgroup> {
    let n = g.order();
    let mut subs: Vec<Subgroup> = vec![g.whole()];
    let mut seen: std::collections::HashSet<Vec<usize>> =
        std::collections::HashSet::from([g.whole().elements]);
    for a in 0..n {
        for b in a..n {
            let h = g.subgroup_generated(&[a, b]);
            if seen.insert(h.elements.clone()) {
                subs.push(h);
            }
        }
    }
    subs.sort_by(|x, y| {
        y.order()
            .cmp(&x.order())
            .then_with(|| x.elements.cmp(&y.elements))
    });
    subs
}

/// Finds a subgroup H and a character λ of H with values ±1 such that
/// `⟨Res_H φ_i, λ⟩ = 1`; returns `Σ_{x∈H} λ(x) x`.
fn multiplicity_one_vector(dec: &Decomposition, i: usize) -> Option<Vec<Q>> {
    let g = &dec.group;
    let subs = small_subgroups(g);
    for h in &subs {
        let mut twists: Vec<Option<&Subgroup>> = vec![None];
        twists.extend(
            subs.iter()
                .filter(|k| 2 * k.order() == h.order() && k.elements.iter().all(|&x| h.contains(x)))
                .map(Some),
        );
        for k in twists {
            let sign = |x: usize| -> i64 {
                match k {
                    Some(k) if !k.contains(x) => -1,
                    _ => 1,
                }
            };
            let mut s = Q::zero();
            for &x in &h.elements {
                s += dec.chi_value(i, x) * Q::from_integer(sign(x).into());
            }
            if s == Q::from_integer((h.order() as i64).into()) {
                let mut v = algebra::zero(g);
                for &x in &h.elements {
                    v[x] = Q::from_integer(sign(x).into());
                }
                return Some(v);
            }
        }
    }
    None
}

pub fn build_integral_rep(dec: &Decomposition, i: usize) -> Result<IntegralRep> {
    let g = &dec.group;
    let c = dec.component(i)?;
    let h = c.h as usize;
    let x = multiplicity_one_vector(dec, i).ok_or_else(|| Error::UnsupportedComponent {
        component: i,
        reason: "no monomial lattice found for this component".into(),
    })?;
    let v = algebra::mul(g, &c.idempotent, &x);
    let orbit: Vec<Vec<Q>> = (0..g.order())
        .map(|y| algebra::left_mul_elem(g, y, &v))
        .collect();
    let den = orbit.iter().flatten().fold(BigInt::one(), |acc, q| {
        num_integer::Integer::lcm(&acc, q.denom())
    });
    let int_rows: Vec<Vec<BigInt>> = orbit
        .iter()
        .map(|row| {
            row.iter()
                .map(|q| (q * Q::from_integer(den.clone())).to_integer())
                .collect()
        })
        .collect();
    let basis_int = hnf_rows(&int_rows);
    if basis_int.len() != h {
        return Err(Error::InvariantViolated(format!(
            "lattice for component {i} has rank {} instead of {h}",
            basis_int.len()
        )));
    }
    let basis: Vec<Vec<Q>> = basis_int
        .iter()
        .map(|row| row.iter().map(|z| Q::from_integer(z.clone())).collect())
        .collect();
    let mut gen_mats: Vec<(usize, Vec<Vec<i64>>)> = Vec::new();
    for &s in g.generators() {
        let mut m = vec![vec![0i64; h]; h];
        for (j, b) in basis.iter().enumerate() {
            let image = algebra::left_mul_elem(g, s, b);
            let coords = solve_in_span(&basis, &image)
                .ok_or_else(|| Error::InvariantViolated("lattice is not Γ-stable".into()))?;
            for (row, q) in coords.iter().enumerate() {
                if !q.is_integer() {
                    return Err(Error::InvariantViolated(
                        "non-integral action on the lattice".into(),
                    ));
                }
                m[row][j] = q
                    .to_integer()
                    .to_i64()
                    .ok_or_else(|| Error::TooLarge("matrix entry".into()))?;
            }
        }
        gen_mats.push((s, m));
    }
    let mut matrices: Vec<Option<Vec<Vec<i64>>>> = vec![None; g.order()];
    matrices[0] = Some(identity(h));
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(y) = queue.pop_front() {
        for (s, ms) in &gen_mats {
            let z = g.mul(*s, y);
            if matrices[z].is_none() {
                matrices[z] = Some(mat_mul(ms, matrices[y].as_ref().unwrap()));
                queue.push_back(z);
            }
        }
    }
    Ok(IntegralRep {
        dim: h,
        matrices: matrices
            .into_iter()
            .map(|m| m.expect("generators generate"))
            .collect(),
    })
}

fn identity(h: usize) -> Vec<Vec<i64>> {
    (0..h)
        .map(|i| (0..h).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Trace of every element's matrix equals `φ_i`, and the map is multiplicative.
pub fn check_integral_rep(dec: &Decomposition, i: usize, rep: &IntegralRep) -> Result<()> {
    let g = &dec.group;
    for x in 0..g.order() {
        let tr: i64 = (0..rep.dim).map(|k| rep.matrices[x][k][k]).sum();
        if Some(Q::from_integer(tr.into())) != dec.phi_value(i, x).as_rational() {
            return Err(Error::InvariantViolated(format!(
                "trace mismatch at element {x}"
            )));
        }
        for &s in g.generators() {
            if mat_mul(&rep.matrices[s], &rep.matrices[x]) != rep.matrices[g.mul(s, x)] {
                return Err(Error::InvariantViolated(
                    "representation is not multiplicative".into(),
                ));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::builtin::builtin;

    #[test]
    fn registry_groups_have_integral_reps() {
        for name in ["C2", "C6", "V4", "S3", "D4", "A4", "S4", "A5"] {
            let dec = Decomposition::new(&builtin(name).unwrap()).unwrap();
            assert!(dec.registry_validated, "{name}");
            for c in &dec.components {
                if c.center_degree == 1 {
                    let rep = dec.integral_rep(c.index).unwrap();
                    check_integral_rep(&dec, c.index, rep).unwrap();
                }
            }
        }
    }

    #[test]
    fn unknown_names_are_not_split() {
        let mut g = builtin("S3").unwrap();
        g.set_name("mystery");
        let dec = Decomposition::new(&g).unwrap();
        assert!(!dec.registry_validated);
        assert!(dec.integral_rep(3).is_err());
    }
}
