//! Finite Γ-modules: a product of cyclic groups with one integer matrix per
//! generator of Γ. Matrices act on coordinate columns: entry `[i][j]` is the
//! `i`-th coordinate of the image of the `j`-th basis vector, modulo the
//! order of factor `i`.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::abelian::AbelianGroup;
use super::partition::Partition;
use super::types::{ModuleType, TypeEntry};
use crate::arith::{is_p_integral, prime_divisors, reduce_mod};
use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};
use crate::rep::{Decomposition, Verdict};

pub type Mat = Vec<Vec<i64>>;

/// Largest module whose elements are enumerated directly.
pub const ENUMERATION_CAP: usize = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaModule {
    pub group: AbelianGroup,
    pub action: Vec<Mat>,
    pub type_cache: Option<ModuleType>,
}

/// Fixed points and norm image under a subgroup, as sorted element indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedNorm {
    pub fixed: Vec<usize>,
    pub norm: Vec<usize>,
    /// `Ĥ⁰ = G^Λ / N_Λ G` vanishes.
    pub tate_h0_trivial: bool,
}

#[derive(Serialize, Deserialize)]
struct ModuleDoc {
    orders: Vec<u64>,
    action: Vec<Mat>,
}

impl GammaModule {
    /// Checks that each matrix is well defined on the given cyclic factors.
    pub fn new(orders: Vec<u64>, action: Vec<Mat>) -> Result<GammaModule> {
        let n = orders.len();
        if orders.iter().any(|&d| d < 2) {
            return Err(Error::InvariantViolated(
                "cyclic factors must have order at least 2".into(),
            ));
        }
        let mut norm = Vec::with_capacity(action.len());
        for m in action {
            if m.len() != n || m.iter().any(|r| r.len() != n) {
                return Err(Error::InvariantViolated(
                    "action matrix has the wrong shape".into(),
                ));
            }
            let m: Mat = m
                .iter()
                .enumerate()
                .map(|(i, r)| r.iter().map(|&x| x.rem_euclid(orders[i] as i64)).collect())
                .collect();
            for j in 0..n {
                for i in 0..n {
                    if (orders[j] as i128 * m[i][j] as i128) % orders[i] as i128 != 0 {
                        return Err(Error::InvariantViolated(format!(
                            "matrix entry ({i}, {j}) is not well defined on Z/{} -> Z/{}",
                            orders[j], orders[i]
                        )));
                    }
                }
            }
            norm.push(m);
        }
        Ok(GammaModule {
            group: AbelianGroup::new(orders),
            action: norm,
            type_cache: None,
        })
    }

    pub fn zero(num_generators: usize) -> GammaModule {
        GammaModule {
            group: AbelianGroup::new(Vec::new()),
            action: vec![Vec::new(); num_generators],
            type_cache: None,
        }
    }

    pub fn orders(&self) -> &[u64] {
        &self.group.orders
    }

    pub fn rank(&self) -> usize {
        self.group.rank()
    }

    pub fn order(&self) -> u128 {
        self.group.order()
    }

    pub fn is_zero(&self) -> bool {
        self.group.rank() == 0
    }

    pub fn apply(&self, m: &Mat, x: &[u64]) -> Vec<u64> {
        let orders = &self.group.orders;
        (0..orders.len())
            .map(|i| {
                let d = orders[i] as i128;
                let s: i128 = (0..orders.len())
                    .map(|j| m[i][j] as i128 * x[j] as i128)
                    .sum();
                s.rem_euclid(d) as u64
            })
            .collect()
    }

    pub fn mat_mul(&self, a: &Mat, b: &Mat) -> Mat {
        let orders = &self.group.orders;
        let n = orders.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let s: i128 = (0..n).map(|k| a[i][k] as i128 * b[k][j] as i128).sum();
                        s.rem_euclid(orders[i] as i128) as i64
                    })
                    .collect()
            })
            .collect()
    }

    fn identity_mat(&self) -> Mat {
        let n = self.rank();
        (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect()
    }

    /// Matrix of every element of Γ. Fails when the generator matrices do not
    /// satisfy the relations of Γ.
    pub fn element_matrices(&self, g: &Group) -> Result<Vec<Mat>> {
        if self.action.len() != g.generators().len() {
            return Err(Error::InvariantViolated(format!(
                "{} action matrices for {} generators",
                self.action.len(),
                g.generators().len()
            )));
        }
        let mut mats: Vec<Option<Mat>> = vec![None; g.order()];
        mats[0] = Some(self.identity_mat());
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (k, &s) in g.generators().iter().enumerate() {
                let prod = self.mat_mul(&self.action[k], mats[x].as_ref().expect("visited"));
                let y = g.mul(s, x);
                match &mats[y] {
                    Some(m) if *m != prod => {
                        return Err(Error::InvariantViolated(
                            "action does not respect the relations of Γ".into(),
                        ))
                    }
                    Some(_) => {}
                    None => {
                        mats[y] = Some(prod);
                        queue.push_back(y);
                    }
                }
            }
        }
        Ok(mats
            .into_iter()
            .map(|m| m.expect("generators generate Γ"))
            .collect())
    }

    /// Relations of Γ hold and every generator acts bijectively.
    pub fn validate(&self, g: &Group) -> Result<()> {
        let mats = self.element_matrices(g)?;
        // bijective because each matrix has an inverse among the element matrices
        for (x, m) in mats.iter().enumerate() {
            if self.mat_mul(m, &mats[g.inv(x)]) != self.identity_mat() {
                return Err(Error::InvariantViolated(
                    "an element acts non-invertibly".into(),
                ));
            }
        }
        Ok(())
    }

    /// Connected components of the coupling between basis vectors; the module
    /// is the direct sum of the spans of the blocks.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let n = self.rank();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for m in &self.action {
            for i in 0..n {
                for j in 0..n {
                    if i != j && m[i][j] != 0 {
                        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                        parent[a] = b;
                    }
                }
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for i in 0..n {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(i);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort();
        out
    }

    /// Submodule spanned by the listed basis vectors, assumed to form a union
    /// of blocks.
    pub fn restrict(&self, coords: &[usize]) -> GammaModule {
        let orders = coords.iter().map(|&i| self.group.orders[i]).collect();
        let action = self
            .action
            .iter()
            .map(|m| {
                coords
                    .iter()
                    .map(|&i| coords.iter().map(|&j| m[i][j]).collect())
                    .collect()
            })
            .collect();
        GammaModule {
            group: AbelianGroup::new(orders),
            action,
            type_cache: None,
        }
    }

    pub fn direct_sum(&self, other: &GammaModule) -> GammaModule {
        let (a, b) = (self.rank(), other.rank());
        let mut orders = self.group.orders.clone();
        orders.extend(&other.group.orders);
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(x, y)| {
                let mut m = vec![vec![0i64; a + b]; a + b];
                for i in 0..a {
                    m[i][..a].copy_from_slice(&x[i]);
                }
                for i in 0..b {
                    m[a + i][a..].copy_from_slice(&y[i]);
                }
                m
            })
            .collect();
        GammaModule {
            group: AbelianGroup::new(orders),
            action,
            type_cache: None,
        }
    }

    fn check_enumerable(&self) -> Result<usize> {
        let n = self.order();
        if n > ENUMERATION_CAP as u128 {
            return Err(Error::TooLarge(format!(
                "module of order {n} is too large to enumerate"
            )));
        }
        Ok(n as usize)
    }

    /// Elements fixed by every element of `sub`.
    pub fn fixed_points(&self, g: &Group, sub: &Subgroup) -> Result<Vec<usize>> {
        let n = self.check_enumerable()?;
        let mats = self.element_matrices(g)?;
        let gens: Vec<&Mat> = sub.generators.iter().map(|&s| &mats[s]).collect();
        Ok((0..n)
            .filter(|&idx| {
                let x = self.group.element(idx);
                gens.iter().all(|m| self.apply(m, &x) == x)
            })
            .collect())
    }

    /// Image of the norm `Σ_{λ∈Λ} λ`.
    pub fn norm_image(&self, g: &Group, sub: &Subgroup) -> Result<Vec<usize>> {
        let n = self.check_enumerable()?;
        let mats = self.element_matrices(g)?;
        let mut seen = vec![false; n];
        for idx in 0..n {
            let x = self.group.element(idx);
            let mut acc = vec![0u64; self.rank()];
            for &l in &sub.elements {
                acc = self.group.add(&acc, &self.apply(&mats[l], &x));
            }
            seen[self.group.index(&acc)] = true;
        }
        Ok((0..n).filter(|&i| seen[i]).collect())
    }

    pub fn fixed_and_norm(&self, g: &Group, sub: &Subgroup) -> Result<FixedNorm> {
        let fixed = self.fixed_points(g, sub)?;
        let norm = self.norm_image(g, sub)?;
        let tate_h0_trivial = fixed == norm;
        Ok(FixedNorm {
            fixed,
            norm,
            tate_h0_trivial,
        })
    }

    /// `|G^Λ|`, computed block by block.
    pub fn fixed_count(&self, g: &Group, sub: &Subgroup) -> Result<u128> {
        let mut total = 1u128;
        for block in self.blocks() {
            let m = self.restrict(&block);
            total *= m.fixed_points(g, sub)?.len() as u128;
        }
        Ok(total)
    }

    pub fn has_trivial_invariants(&self, g: &Group) -> Result<bool> {
        Ok(self.fixed_count(g, &g.whole())? == 1)
    }

    /// Subgroup generated by the given elements, as a membership mask.
    fn span(&self, gens: &[Vec<u64>]) -> Vec<bool> {
        let n = self.group.size();
        let mut inside = vec![false; n];
        inside[0] = true;
        let mut members = vec![vec![0u64; self.rank()]];
        for gen in gens {
            if inside[self.group.index(gen)] {
                continue;
            }
            let before = members.clone();
            let mut multiple = gen.clone();
            while !AbelianGroup::is_zero(&multiple) {
                for y in &before {
                    let z = self.group.add(y, &multiple);
                    let zi = self.group.index(&z);
                    if !inside[zi] {
                        inside[zi] = true;
                        members.push(z);
                    }
                }
                multiple = self.group.add(&multiple, gen);
            }
        }
        inside
    }

    /// Type of the module: the partition of each `e_i G_p` with cyclic
    /// multiplicities divided by `h_i`.
    pub fn type_of(&self, dec: &Decomposition) -> Result<ModuleType> {
        let g = &dec.group;
        if self.is_zero() {
            return Ok(ModuleType::zero());
        }
        self.check_enumerable()?;
        let mats = self.element_matrices(g)?;
        let exponent = self.group.exponent();
        let mut entries = Vec::new();
        for p in prime_divisors(exponent) {
            let mut pk = 1u64;
            while exponent % (pk * p) == 0 {
                pk *= p;
            }
            let cofactor = exponent / pk;
            // generators of the p-primary part
            let gens: Vec<Vec<u64>> = (0..self.rank())
                .map(|j| {
                    let mut x = vec![0u64; self.rank()];
                    x[j] = 1;
                    self.group.scale(cofactor as i64, &x)
                })
                .filter(|x| !AbelianGroup::is_zero(x))
                .collect();
            let primary = self.span(&gens);
            let primary_order = primary.iter().filter(|&&b| b).count() as u128;
            let mut covered = 1u128;
            for c in &dec.components {
                if !c.idempotent.iter().all(|q| is_p_integral(q, p)) {
                    continue;
                }
                let coeffs: Vec<i64> = c
                    .idempotent
                    .iter()
                    .map(|q| reduce_mod(q, pk) as i64)
                    .collect();
                let images: Vec<Vec<u64>> = gens
                    .iter()
                    .map(|x| {
                        let mut acc = vec![0u64; self.rank()];
                        for (el, &k) in coeffs.iter().enumerate() {
                            if k != 0 {
                                acc = self
                                    .group
                                    .add(&acc, &self.group.scale(k, &self.apply(&mats[el], x)));
                            }
                        }
                        acc
                    })
                    .collect();
                let image = self.span(&images);
                let exps = p_type(&self.group, &image, p);
                if exps.is_empty() {
                    continue;
                }
                let size: u32 = exps.iter().sum();
                covered *= (p as u128).pow(size);
                if dec.verdict(c.index, p) != Verdict::Good {
                    return Err(Error::BadPrime {
                        prime: p,
                        component: c.index,
                    });
                }
                let part = Partition::from_exponents(&exps, c.h as usize).ok_or_else(|| {
                    Error::NotHomogeneous(format!(
                        "component {} at {p} has cyclic exponents {exps:?}, not a multiple of h = {}",
                        c.index, c.h
                    ))
                })?;
                entries.push(TypeEntry {
                    component: c.index,
                    prime: p,
                    partition: part,
                });
            }
            if covered != primary_order {
                let bad = dec
                    .components
                    .iter()
                    .find(|c| !c.idempotent.iter().all(|q| is_p_integral(q, p)))
                    .map_or(1, |c| c.index);
                return Err(Error::BadPrime {
                    prime: p,
                    component: bad,
                });
            }
        }
        ModuleType::new(entries)
    }

    /// Module realizing a type through the integral representations.
    pub fn from_type(t: &ModuleType, dec: &Decomposition) -> Result<GammaModule> {
        let g = &dec.group;
        let mut m = GammaModule::zero(g.generators().len());
        for e in t.entries() {
            let rep = dec.integral_rep(e.component)?;
            if dec.verdict(e.component, e.prime) != Verdict::Good {
                return Err(Error::BadPrime {
                    prime: e.prime,
                    component: e.component,
                });
            }
            for &part in e.partition.parts() {
                let d = (e.prime as i64).pow(part);
                let orders = vec![d as u64; rep.dim];
                let action = g
                    .generators()
                    .iter()
                    .map(|&s| {
                        rep.matrix(s)
                            .iter()
                            .map(|r| r.iter().map(|x| x.rem_euclid(d)).collect())
                            .collect()
                    })
                    .collect();
                m = m.direct_sum(&GammaModule::new(orders, action)?);
            }
        }
        m.type_cache = Some(t.clone());
        Ok(m)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(&ModuleDoc {
            orders: self.group.orders.clone(),
            action: self.action.clone(),
        })
        .expect("module serializes")
    }

    pub fn from_toml(text: &str) -> Result<GammaModule> {
        let doc: ModuleDoc = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        GammaModule::new(doc.orders, doc.action)
    }
}

/// Cyclic exponents of the p-group given by a membership mask.
fn p_type(a: &AbelianGroup, mask: &[bool], p: u64) -> Vec<u32> {
    // |S[p^k]| for k = 0, 1, ...
    let mut counts: Vec<u128> = Vec::new();
    let orders: Vec<u64> = (0..mask.len())
        .filter(|&i| mask[i])
        .map(|i| a.element_order(&a.element(i)))
        .collect();
    let max = orders.iter().copied().max().unwrap_or(1);
    let mut pk = 1u64;
    loop {
        counts.push(orders.iter().filter(|&&o| pk % o == 0).count() as u128);
        if pk >= max {
            break;
        }
        pk *= p;
    }
    // λ'_k = log_p(|S[p^k]| / |S[p^{k-1}]|)
    let mut transpose = Vec::new();
    for w in counts.windows(2) {
        let mut ratio = w[1] / w[0];
        let mut e = 0;
        while ratio > 1 {
            ratio /= p as u128;
            e += 1;
        }
        transpose.push(e);
    }
    Partition::from_transpose(&transpose).parts().to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::builtin::builtin;

    #[test]
    fn sign_module_over_c2() {
        let g = builtin("C2").unwrap();
        let dec = Decomposition::new(&g).unwrap();
        let m = GammaModule::new(vec![3], vec![vec![vec![-1]]]).unwrap();
        m.validate(&g).unwrap();
        assert_eq!(m.type_of(&dec).unwrap().to_string(), "2:3:(1)");
        let fnorm = m.fixed_and_norm(&g, &g.whole()).unwrap();
        assert_eq!(fnorm.fixed, vec![0]);
        assert!(fnorm.tate_h0_trivial);
        let triv = GammaModule::new(vec![3], vec![vec![vec![1]]]).unwrap();
        let fnorm = triv.fixed_and_norm(&g, &g.whole()).unwrap();
        assert_eq!(fnorm.fixed.len(), 3);
        assert_eq!(fnorm.norm.len(), 3);
        let bad = GammaModule::new(vec![3], vec![vec![vec![2]], vec![vec![1]]]);
        assert!(bad.unwrap().validate(&g).is_err());
    }

    #[test]
    fn round_trip_s3() {
        let g = builtin("S3").unwrap();
        let dec = Decomposition::new(&g).unwrap();
        let t = ModuleType::single(3, 2, Partition::new(vec![2, 1]));
        let m = GammaModule::from_type(&t, &dec).unwrap();
        m.validate(&g).unwrap();
        assert_eq!(m.orders(), &[4, 4, 2, 2]);
        assert_eq!(m.type_of(&dec).unwrap(), t);
        assert_eq!(
            GammaModule::from_toml(&m.to_toml()).unwrap().action,
            m.action
        );
    }
}
