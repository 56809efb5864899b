//! Modules over the Hecke order, and the functor `G ↦ G^{Γ'}`.

use num_traits::Zero;

use super::{HeckeOrder, LocalOrder};
use crate::arith::qmat::solve_in_span;
use crate::arith::{prime_divisors, reduce_mod, Q};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::module::abelian::AbelianGroup;
use crate::module::counting::BruteCounter;
use crate::module::gamma::Mat;
use crate::module::{isomorphic, GammaModule};
use crate::rep::algebra::{self, AlgElem};
use crate::rep::Decomposition;

/// A finite module over the order at one prime: cyclic factors and one
/// matrix per basis element of the order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OModule {
    pub prime: u64,
    pub orders: Vec<u64>,
    pub action: Vec<Mat>,
}

impl OModule {
    pub fn zero(prime: u64, rank: usize) -> OModule {
        OModule {
            prime,
            orders: Vec::new(),
            action: vec![Vec::new(); rank],
        }
    }

    pub fn order(&self) -> u128 {
        self.orders.iter().map(|&d| d as u128).product()
    }

    pub fn is_zero(&self) -> bool {
        self.orders.is_empty()
    }

    /// The same data viewed as a module over arbitrary operators.
    pub fn as_operator_module(&self) -> Result<GammaModule> {
        if self.is_zero() {
            return Ok(GammaModule::zero(self.action.len()));
        }
        GammaModule::new(self.orders.clone(), self.action.clone())
    }

    /// Action matrix of `Σ_k c_k b_k`.
    pub fn element_matrix(&self, coeffs: &[Q]) -> Result<Mat> {
        let n = self.orders.len();
        let mut out = vec![vec![0i64; n]; n];
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for i in 0..n {
                let d = self.orders[i];
                let ck = reduce_mod(c, d) as i64;
                for j in 0..n {
                    out[i][j] = (out[i][j] + ck * self.action[k][i][j]).rem_euclid(d as i64);
                }
            }
        }
        Ok(out)
    }

    /// Structure constants and the identity hold exactly.
    pub fn check(&self, o: &LocalOrder) -> Result<()> {
        let m = self.as_operator_module()?;
        let n = self.orders.len();
        let id: Mat = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        if self.element_matrix(&o.identity)? != id {
            return Err(Error::InvariantViolated(
                "identity of the order does not act as 1".into(),
            ));
        }
        for a in 0..self.action.len() {
            for b in 0..self.action.len() {
                let lhs = m.mat_mul(&self.action[a], &self.action[b]);
                if lhs != self.element_matrix(&o.structure[a][b])? {
                    return Err(Error::InvariantViolated(format!(
                        "action breaks the product b{a}·b{b}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn isomorphic(&self, other: &OModule, limits: &Limits) -> Result<bool> {
        isomorphic(
            &self.as_operator_module()?,
            &other.as_operator_module()?,
            limits,
        )
    }

    /// `|Aut_𝔬(H)|` by exhaustive search.
    pub fn aut_count(&self, limits: &Limits) -> Result<u128> {
        BruteCounter::for_operators(*limits).aut(&self.as_operator_module()?)
    }

    /// `|x·H|` for an element of the order given in basis coordinates.
    pub fn image_order(&self, coeffs: &[Q]) -> Result<u128> {
        let m = self.as_operator_module()?;
        let mat = self.element_matrix(coeffs)?;
        let images: Vec<Vec<u64>> = (0..self.orders.len())
            .map(|j| {
                let mut x = vec![0u64; self.orders.len()];
                x[j] = 1;
                m.apply(&mat, &x)
            })
            .collect();
        Ok(span_mask(&m.group, &images).iter().filter(|&&b| b).count() as u128)
    }
}

/// `⊕ Z/d` with the order acting through its projection to component `i`,
/// which must occur with multiplicity one and rational center.
pub fn character_module(
    o: &HeckeOrder,
    dec: &Decomposition,
    prime: u64,
    component: usize,
    orders: Vec<u64>,
) -> Result<OModule> {
    let g = &dec.group;
    let aug = &o.augmentation;
    if aug.multiplicity(component) != Some(1) || dec.component(component)?.orbit.len() != 1 {
        return Err(Error::Usage(format!(
            "component {component} is not a rank-one Hecke factor"
        )));
    }
    let local = o
        .at(prime)
        .ok_or_else(|| Error::Usage(format!("order was not built at {prime}")))?;
    let ei = &dec.component(component)?.idempotent;
    let unit = algebra::mul(g, ei, &o.identity);
    let pivot = unit
        .iter()
        .position(|c| !c.is_zero())
        .expect("component meets the order");
    let n = orders.len();
    let mut action = Vec::with_capacity(local.basis.len());
    for b in &local.basis {
        let img = algebra::mul(g, ei, b);
        let lambda = img[pivot].clone() / unit[pivot].clone();
        if algebra::scale(&unit, &lambda) != img {
            return Err(Error::InvariantViolated(
                "order does not act by scalars on the component".into(),
            ));
        }
        if !crate::arith::is_p_integral(&lambda, prime) {
            return Err(Error::InvariantViolated("scalar is not integral".into()));
        }
        let mat = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| {
                        if r == c {
                            reduce_mod(&lambda, orders[r]) as i64
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect();
        action.push(mat);
    }
    let h = OModule {
        prime,
        orders,
        action,
    };
    h.check(local)?;
    Ok(h)
}

/// A module over an order spanned by `1` and `t`, given the matrix of `t`.
/// With no `t` the order must be spanned by its identity.
pub fn omodule_from_generator(
    o: &HeckeOrder,
    prime: u64,
    t: Option<(&AlgElem, &Mat)>,
    orders: Vec<u64>,
) -> Result<OModule> {
    let local = o
        .at(prime)
        .ok_or_else(|| Error::Usage(format!("order was not built at {prime}")))?;
    let mut span = vec![o.identity.clone()];
    if let Some((elem, _)) = t {
        span.push(elem.clone());
    }
    let n = orders.len();
    let mut action = Vec::with_capacity(local.basis.len());
    for b in &local.basis {
        let c = solve_in_span(&span, b)
            .filter(|c| c.iter().all(|q| crate::arith::is_p_integral(q, prime)))
            .ok_or_else(|| Error::Usage("order is not spanned by 1 and the generator".into()))?;
        let mut mat: Mat = (0..n)
            .map(|r| {
                (0..n)
                    .map(|k| {
                        if r == k {
                            reduce_mod(&c[0], orders[r]) as i64
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect();
        if let Some((_, tm)) = t {
            for r in 0..n {
                let beta = reduce_mod(&c[1], orders[r]) as i64;
                for k in 0..n {
                    mat[r][k] = (mat[r][k] + beta * tm[r][k]).rem_euclid(orders[r] as i64);
                }
            }
        }
        action.push(mat);
    }
    let h = OModule {
        prime,
        orders,
        action,
    };
    h.check(local)?;
    Ok(h)
}

/// Subgroup generated by the given elements, as a membership mask.
pub(crate) fn span_mask(a: &AbelianGroup, gens: &[Vec<u64>]) -> Vec<bool> {
    let mut inside = vec![false; a.size()];
    inside[0] = true;
    let mut members = vec![vec![0u64; a.rank()]];
    for gen in gens {
        if inside[a.index(gen)] {
            continue;
        }
        let before = members.clone();
        let mut multiple = gen.clone();
        while !AbelianGroup::is_zero(&multiple) {
            for y in &before {
                let z = a.add(y, &multiple);
                let zi = a.index(&z);
                if !inside[zi] {
                    inside[zi] = true;
                    members.push(z);
                }
            }
            multiple = a.add(&multiple, gen);
        }
    }
    inside
}

/// Basis of a subgroup of a finite abelian p-group: repeatedly adjoin a
/// lift of least order of an element of largest order modulo the part
/// already built.
pub(crate) fn subgroup_basis(a: &AbelianGroup, mask: &[bool]) -> Vec<(Vec<u64>, u64)> {
    let members: Vec<usize> = (0..mask.len()).filter(|&i| mask[i]).collect();
    let mut chosen: Vec<(Vec<u64>, u64)> = Vec::new();
    let mut current = span_mask(a, &[]);
    loop {
        if members.iter().all(|&i| current[i]) {
            return chosen;
        }
        // order of each member modulo the current span
        let rel_order = |x: &Vec<u64>| -> u64 {
            let mut k = 1u64;
            let mut y = x.clone();
            while !current[a.index(&y)] {
                y = a.add(&y, x);
                k += 1;
            }
            k
        };
        let mut best: Option<(u64, usize)> = None;
        for &i in &members {
            let o = rel_order(&a.element(i));
            if best.is_none_or(|b| o > b.0) {
                best = Some((o, i));
            }
        }
        let (o, i) = best.expect("some member lies outside");
        let x = a.element(i);
        // least-order element of the coset x + span
        let mut lift = x.clone();
        let mut lift_order = a.element_order(&x);
        for (c, &inside) in current.iter().enumerate() {
            if inside {
                let y = a.add(&x, &a.element(c));
                let oy = a.element_order(&y);
                if oy < lift_order {
                    lift = y;
                    lift_order = oy;
                }
            }
        }
        debug_assert_eq!(lift_order, o);
        chosen.push((lift, o));
        let gens: Vec<Vec<u64>> = chosen.iter().map(|(v, _)| v.clone()).collect();
        current = span_mask(a, &gens);
    }
}

/// `G^{Γ'}` as a module over the order, with `(Σ a_σ e σ e₁')·g = Σ a_σ σ·g`.
/// `G` must be a p-primary module over the augmentation component.
pub fn invariants_functor(m: &GammaModule, o: &HeckeOrder, dec: &Decomposition) -> Result<OModule> {
    let g = &dec.group;
    let exponent = m.group.exponent();
    let primes = prime_divisors(exponent);
    let p = match primes.as_slice() {
        [] => o
            .local
            .first()
            .map(|l| l.prime)
            .ok_or_else(|| Error::Usage("order has no primes".into()))?,
        [p] => *p,
        _ => {
            return Err(Error::Usage(
                "invariants are taken one prime at a time".into(),
            ))
        }
    };
    let local = o
        .at(p)
        .ok_or_else(|| Error::Usage(format!("order was not built at {p}")))?;
    if m.is_zero() {
        return Ok(OModule::zero(p, local.basis.len()));
    }
    let mats = m.element_matrices(g)?;
    let modulus = exponent;
    // Σ_σ a_σ σ·x
    let act = |coeffs: &[Q], x: &[u64]| -> Vec<u64> {
        let mut acc = vec![0u64; m.rank()];
        for (s, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = reduce_mod(c, modulus) as i64;
            acc = m.group.add(&acc, &m.group.scale(k, &m.apply(&mats[s], x)));
        }
        acc
    };
    // G must be an e-module
    let e = &o.augmentation.idempotent;
    for j in 0..m.rank() {
        let mut x = vec![0u64; m.rank()];
        x[j] = 1;
        if act(e, &x) != x {
            return Err(Error::InvariantViolated(
                "module is not supported on the augmentation component".into(),
            ));
        }
    }
    let fixed = m.fixed_points(g, &o.augmentation.subgroup)?;
    let mut mask = vec![false; m.group.size()];
    for &i in &fixed {
        mask[i] = true;
    }
    let basis = subgroup_basis(&m.group, &mask);
    let orders: Vec<u64> = basis.iter().map(|(_, d)| *d).collect();
    let sub = AbelianGroup::new(orders.clone());
    // coordinates of fixed elements in the chosen basis
    let mut coords: std::collections::HashMap<usize, Vec<u64>> = std::collections::HashMap::new();
    for idx in 0..sub.size() {
        let c = sub.element(idx);
        let mut v = vec![0u64; m.rank()];
        for (k, (b, _)) in basis.iter().enumerate() {
            v = m.group.add(&v, &m.group.scale(c[k] as i64, b));
        }
        coords.insert(m.group.index(&v), c);
    }
    for rel in &local.relations {
        for (b, _) in &basis {
            if !AbelianGroup::is_zero(&act(rel, b)) {
                return Err(Error::InvariantViolated(
                    "action depends on the chosen representative".into(),
                ));
            }
        }
    }
    let mut action = Vec::with_capacity(local.basis.len());
    for rep in &local.representatives {
        let mut mat = vec![vec![0i64; basis.len()]; basis.len()];
        for (j, (b, _)) in basis.iter().enumerate() {
            let y = act(rep, b);
            let c = coords.get(&m.group.index(&y)).ok_or_else(|| {
                Error::InvariantViolated("order element leaves the invariants".into())
            })?;
            for (i, &ci) in c.iter().enumerate() {
                mat[i][j] = ci as i64;
            }
        }
        action.push(mat);
    }
    let h = OModule {
        prime: p,
        orders,
        action,
    };
    h.check(local)?;
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::builtin::builtin;
    use crate::hecke::hecke_order;
    use crate::module::{ModuleType, Partition};

    #[test]
    fn standard_module_of_s3() {
        let g = builtin("S3").unwrap();
        let dec = Decomposition::new(&g).unwrap();
        let o = hecke_order(&dec, g.named_subgroup("S2").unwrap(), &[2]).unwrap();
        let t = ModuleType::single(3, 2, Partition::new(vec![1]));
        let m = GammaModule::from_type(&t, &dec).unwrap();
        let h = invariants_functor(&m, &o, &dec).unwrap();
        assert_eq!(h.orders, vec![2]);
        assert_eq!(h.aut_count(&Limits::default()).unwrap(), 1);
        let z = invariants_functor(&GammaModule::zero(g.generators().len()), &o, &dec).unwrap();
        assert!(z.is_zero());
    }
}
