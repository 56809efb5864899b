//! Exhaustive enumeration of Γ-module structures on a fixed abelian group,
//! and brute-force isomorphism testing.

use std::collections::HashSet;

use super::abelian::AbelianGroup;
use super::counting::aut_formula;
use super::gamma::{GammaModule, Mat};
use super::partition::Partition;
use crate::arith::prime_divisors;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::limits::Limits;

#[derive(Debug, Clone)]
pub struct ModuleStructure {
    pub module: GammaModule,
    /// `G^Γ = 0`.
    pub trivial_invariants: bool,
}

/// `|Aut(A)|` from the partition types of the primary parts.
pub fn abelian_aut_order(a: &AbelianGroup) -> Result<u128> {
    let mut acc = 1u128;
    for p in prime_divisors(a.exponent().max(1)) {
        let part = Partition::new(a.p_exponents(p));
        acc = acc
            .checked_mul(aut_formula(&part, p)?)
            .ok_or_else(|| Error::TooLarge("automorphism count overflows".into()))?;
    }
    Ok(acc)
}

/// Every automorphism of `⊕ Z/d_i` as a matrix, by scanning well-defined
/// matrices and keeping the bijective ones.
pub fn abelian_automorphisms(orders: &[u64], limits: &Limits) -> Result<Vec<Mat>> {
    let a = AbelianGroup::new(orders.to_vec());
    let count = abelian_aut_order(&a)?;
    if count > limits.structure_aut_order as u128 {
        return Err(Error::TooLarge(format!(
            "|Aut(A)| = {count} exceeds {}",
            limits.structure_aut_order
        )));
    }
    let n = orders.len();
    // allowed values for entry (i, j): multiples of d_i / gcd(d_i, d_j)
    let mut choices: Vec<Vec<i64>> = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let g = crate::arith::gcd(orders[i], orders[j]);
            let step = (orders[i] / g) as i64;
            choices.push((0..g as i64).map(|k| k * step).collect());
        }
    }
    let total: u128 = choices.iter().map(|c| c.len() as u128).product();
    if total > limits.search_leaves as u128 {
        return Err(Error::TooLarge(format!(
            "{total} candidate matrices exceed the search budget"
        )));
    }
    let probe = GammaModule::new(orders.to_vec(), Vec::new())?;
    let size = a.size();
    let mut out = Vec::new();
    let mut digits = vec![0usize; n * n];
    loop {
        let m: Mat = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| choices[i * n + j][digits[i * n + j]])
                    .collect()
            })
            .collect();
        let mut hit = vec![false; size];
        let mut bijective = true;
        for idx in 0..size {
            let y = a.index(&probe.apply(&m, &a.element(idx)));
            if hit[y] {
                bijective = false;
                break;
            }
            hit[y] = true;
        }
        if bijective {
            out.push(m);
        }
        let mut k = 0;
        loop {
            if k == digits.len() {
                return Ok(out);
            }
            digits[k] += 1;
            if digits[k] < choices[k].len() {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

fn mat_order(probe: &GammaModule, m: &Mat) -> u64 {
    let n = probe.rank();
    let id: Mat = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut x = m.clone();
    let mut k = 1;
    while x != id {
        x = probe.mat_mul(&x, m);
        k += 1;
    }
    k
}

fn inverse(probe: &GammaModule, m: &Mat) -> Mat {
    let k = mat_order(probe, m);
    let mut x = m.clone();
    for _ in 1..k.saturating_sub(1) {
        x = probe.mat_mul(&x, m);
    }
    if k == 1 {
        return m.clone();
    }
    x
}

/// All Γ-module structures on `⊕ Z/d_i`, one per isomorphism class.
pub fn bruteforce_module_structures(
    g: &Group,
    orders: &[u64],
    limits: &Limits,
) -> Result<Vec<ModuleStructure>> {
    if g.order() > limits.acting_group_order {
        return Err(Error::TooLarge(format!(
            "acting group of order {} exceeds {}",
            g.order(),
            limits.acting_group_order
        )));
    }
    let a = AbelianGroup::new(orders.to_vec());
    if a.order() > limits.structure_module_order as u128 {
        return Err(Error::TooLarge(format!(
            "module of order {} exceeds {}",
            a.order(),
            limits.structure_module_order
        )));
    }
    let gens = g.generators().to_vec();
    if orders.is_empty() {
        return Ok(vec![ModuleStructure {
            module: GammaModule::zero(gens.len()),
            trivial_invariants: true,
        }]);
    }
    let probe = GammaModule::new(orders.to_vec(), Vec::new())?;
    let auts = abelian_automorphisms(orders, limits)?;
    let inverses: Vec<Mat> = auts.iter().map(|m| inverse(&probe, m)).collect();
    let orders_of: Vec<u64> = auts.iter().map(|m| mat_order(&probe, m)).collect();
    let per_gen: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| {
            let o = g.element_order(s) as u64;
            (0..auts.len()).filter(|&k| o % orders_of[k] == 0).collect()
        })
        .collect();
    let total: u128 = per_gen.iter().map(|c| c.len() as u128).product();
    if total > limits.search_leaves as u128 {
        return Err(Error::TooLarge(format!(
            "{total} generator assignments exceed the search budget"
        )));
    }
    let mut seen: HashSet<Vec<Mat>> = HashSet::new();
    let mut out = Vec::new();
    let mut digits = vec![0usize; gens.len()];
    if per_gen.iter().any(|c| c.is_empty()) {
        return Ok(out);
    }
    loop {
        let action: Vec<Mat> = digits
            .iter()
            .enumerate()
            .map(|(k, &d)| auts[per_gen[k][d]].clone())
            .collect();
        if !seen.contains(&action) {
            let module = GammaModule::new(orders.to_vec(), action.clone())?;
            if module.element_matrices(g).is_ok() {
                for (p, pinv) in auts.iter().zip(&inverses) {
                    let conj: Vec<Mat> = action
                        .iter()
                        .map(|m| probe.mat_mul(&probe.mat_mul(p, m), pinv))
                        .collect();
                    seen.insert(conj);
                }
                let trivial_invariants = module.has_trivial_invariants(g)?;
                out.push(ModuleStructure {
                    module,
                    trivial_invariants,
                });
            }
        }
        let mut k = 0;
        loop {
            if k == digits.len() {
                return Ok(out);
            }
            digits[k] += 1;
            if digits[k] < per_gen[k].len() {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

/// `|ker(m − c)|` for every operator `m` and scalar `c` below the exponent;
/// an isomorphism invariant.
fn eigenspace_sizes(m: &GammaModule) -> Vec<usize> {
    let exp = m.group.exponent().max(1);
    let elems: Vec<Vec<u64>> = (0..m.group.size()).map(|i| m.group.element(i)).collect();
    let mut out = Vec::new();
    for op in &m.action {
        let images: Vec<Vec<u64>> = elems.iter().map(|x| m.apply(op, x)).collect();
        for c in 0..exp {
            out.push(
                elems
                    .iter()
                    .zip(&images)
                    .filter(|(x, y)| m.group.scale(c as i64, x) == **y)
                    .count(),
            );
        }
    }
    out
}

/// Order of the subgroup of `b` generated by the listed elements.
fn span_size(b: &GammaModule, images: &[usize]) -> u128 {
    let mut span: HashSet<Vec<u64>> = HashSet::from([vec![0u64; b.rank()]]);
    for &i in images {
        let g = b.group.element(i);
        let mut frontier: Vec<Vec<u64>> = span.iter().cloned().collect();
        while let Some(x) = frontier.pop() {
            let y = b.group.add(&x, &g);
            if span.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    span.len() as u128
}

/// Searches for a bijective map `a → b` commuting with the action.
/// Only the action matrices are used, so any operator modules with matching
/// operator lists can be compared.
pub fn isomorphic(a: &GammaModule, b: &GammaModule, limits: &Limits) -> Result<bool> {
    if a.group.invariant_factors() != b.group.invariant_factors() {
        return Ok(false);
    }
    if a.is_zero() {
        return Ok(true);
    }
    let n = b.group.size();
    if n > super::gamma::ENUMERATION_CAP {
        return Err(Error::TooLarge(format!("module of order {n} is too large")));
    }
    if a.action.len() != b.action.len() || eigenspace_sizes(a) != eigenspace_sizes(b) {
        return Ok(false);
    }
    let elems: Vec<Vec<u64>> = (0..n).map(|i| b.group.element(i)).collect();
    let act: Vec<Vec<usize>> = b
        .action
        .iter()
        .map(|m| {
            elems
                .iter()
                .map(|x| b.group.index(&b.apply(m, x)))
                .collect()
        })
        .collect();
    let r = a.rank();
    let candidates: Vec<Vec<usize>> = (0..r)
        .map(|j| {
            (0..n)
                .filter(|&i| b.group.element_order(&elems[i]) == a.orders()[j])
                .collect()
        })
        .collect();
    let mut images = vec![0usize; r];
    let mut leaves = 0u64;
    // image of Σ c_i e_i under the current assignment
    let eval = |images: &[usize], coeffs: &[i64], upto: usize| -> Vec<u64> {
        let mut acc = vec![0u64; b.rank()];
        for i in 0..upto {
            if coeffs[i] != 0 {
                acc = b
                    .group
                    .add(&acc, &b.group.scale(coeffs[i], &elems[images[i]]));
            }
        }
        acc
    };
    fn rec(
        pos: usize,
        r: usize,
        a: &GammaModule,
        b: &GammaModule,
        candidates: &[Vec<usize>],
        act: &[Vec<usize>],
        images: &mut Vec<usize>,
        leaves: &mut u64,
        budget: u64,
        eval: &dyn Fn(&[usize], &[i64], usize) -> Vec<u64>,
    ) -> Result<bool> {
        if pos == r {
            // bijective iff injective
            let n = a.group.size();
            let mut hit = HashSet::with_capacity(n);
            for idx in 0..n {
                let x = a.group.element(idx);
                let coeffs: Vec<i64> = x.iter().map(|&c| c as i64).collect();
                if !hit.insert(eval(images, &coeffs, r)) {
                    return Ok(false);
                }
            }
            return Ok(true);
        }
        for &c in &candidates[pos] {
            *leaves += 1;
            if *leaves > budget {
                return Err(Error::TooLarge(format!(
                    "isomorphism search exceeded {budget} leaves"
                )));
            }
            images[pos] = c;
            // constraints whose variables are all assigned
            let ok = a.action.iter().enumerate().all(|(s, m)| {
                (0..=pos).all(|j| {
                    let col: Vec<i64> = (0..r).map(|i| m[i][j]).collect();
                    let last = (0..r).filter(|&i| col[i] != 0).max().unwrap_or(0).max(j);
                    if last != pos {
                        return true;
                    }
                    let lhs = eval(images, &col, r.min(pos + 1));
                    b.group.index(&lhs) == act[s][images[j]]
                })
            });
            if ok
                && span_size(b, &images[..=pos])
                    == a.orders()[..=pos].iter().map(|&d| d as u128).product()
                && rec(
                    pos + 1,
                    r,
                    a,
                    b,
                    candidates,
                    act,
                    images,
                    leaves,
                    budget,
                    eval,
                )?
            {
                return Ok(true);
            }
        }
        Ok(false)
    }
    rec(
        0,
        r,
        a,
        b,
        &candidates,
        &act,
        &mut images,
        &mut leaves,
        limits.search_leaves,
        &eval,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::builtin::builtin;

    #[test]
    fn small_structures() {
        let limits = Limits::default();
        let c2 = builtin("C2").unwrap();
        let s = bruteforce_module_structures(&c2, &[3], &limits).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.iter().filter(|x| x.trivial_invariants).count(), 1);
        assert_eq!(
            bruteforce_module_structures(&c2, &[2], &limits)
                .unwrap()
                .len(),
            1
        );
        let s3 = builtin("S3").unwrap();
        assert_eq!(
            bruteforce_module_structures(&s3, &[2, 2], &limits)
                .unwrap()
                .len(),
            3
        );
        assert_eq!(abelian_automorphisms(&[9, 3], &limits).unwrap().len(), 108);
    }
}
