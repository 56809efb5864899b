//! Counting Γ-homomorphisms, surjections and automorphisms, by closed formula
//! on partition types and by exhaustive search on explicit modules.

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex};

use super::gamma::GammaModule;
use super::partition::Partition;
use super::types::ModuleType;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::limits::Limits;
use crate::rep::Decomposition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MapKind {
    Hom,
    Sur,
    Aut,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Formula,
    BruteForce,
}

#[derive(Debug, Clone)]
pub enum Operand {
    Type(ModuleType),
    Module(GammaModule),
}

fn upow(q: u64, e: u32) -> Result<u128> {
    (q as u128)
        .checked_pow(e)
        .ok_or_else(|| Error::TooLarge(format!("{q}^{e} overflows")))
}

fn overflow() -> Error {
    Error::TooLarge("count overflows 128 bits".into())
}

/// `|Hom(G_λ, G_μ)| = q^{Σ λ'_k μ'_k}`.
pub fn hom_formula(lambda: &Partition, mu: &Partition, q: u64) -> Result<u128> {
    let top = lambda.largest().min(mu.largest());
    let e: u32 = (1..=top)
        .map(|k| lambda.conjugate_part(k) * mu.conjugate_part(k))
        .sum();
    upow(q, e)
}

/// Surjections `G_λ → G_μ`: a map is onto exactly when it is onto modulo
/// the radical, which gives `Hom · Π_k (1 − q^{k−1−λ'_{μ_k}})`.
pub fn sur_formula(lambda: &Partition, mu: &Partition, q: u64) -> Result<u128> {
    let hom = hom_formula(lambda, mu, q)?;
    let mut num = 1u128;
    let mut den_exp = 0u32;
    for (k, &m) in mu.parts().iter().enumerate() {
        let d = lambda.conjugate_part(m);
        if (k as u32) >= d {
            return Ok(0);
        }
        num = num
            .checked_mul(upow(q, d)? - upow(q, k as u32)?)
            .ok_or_else(overflow)?;
        den_exp += d;
    }
    Ok(hom / upow(q, den_exp)? * num)
}

/// `|Aut(G_μ)| = q^{Σ (μ'_k)²} Π_m (k_m)_q` with `k_m` the multiplicity of
/// the part `m` and `(k)_q = Π_{i≤k} (1 − q^{−i})`.
pub fn aut_formula(mu: &Partition, q: u64) -> Result<u128> {
    let mut e: u32 = (1..=mu.largest())
        .map(|k| mu.conjugate_part(k).pow(2))
        .sum();
    let mut acc = 1u128;
    for m in 1..=mu.largest() {
        let k = mu.multiplicity(m);
        for i in 1..=k {
            acc = acc.checked_mul(upow(q, i)? - 1).ok_or_else(overflow)?;
            e -= i;
        }
    }
    acc.checked_mul(upow(q, e)?).ok_or_else(overflow)
}

/// Closed-form count on types, multiplicative over (component, prime) pairs.
/// `Aut` counts automorphisms of `dst`.
pub fn count_types(
    kind: MapKind,
    src: &ModuleType,
    dst: &ModuleType,
    dec: &Decomposition,
) -> Result<u128> {
    for e in src.entries().iter().chain(dst.entries()) {
        dec.require_supported(e.component)?;
    }
    let empty = Partition::empty();
    let mut acc = 1u128;
    match kind {
        MapKind::Hom => {
            for e in src.entries() {
                if let Some(mu) = dst.partition(e.component, e.prime) {
                    acc = acc
                        .checked_mul(hom_formula(&e.partition, mu, e.prime)?)
                        .ok_or_else(overflow)?;
                }
            }
        }
        MapKind::Sur => {
            for e in dst.entries() {
                let lambda = src.partition(e.component, e.prime).unwrap_or(&empty);
                acc = acc
                    .checked_mul(sur_formula(lambda, &e.partition, e.prime)?)
                    .ok_or_else(overflow)?;
            }
        }
        MapKind::Aut => {
            for e in dst.entries() {
                acc = acc
                    .checked_mul(aut_formula(&e.partition, e.prime)?)
                    .ok_or_else(overflow)?;
            }
        }
    }
    Ok(acc)
}

/// Dense tables for a target module: element coordinates and the action of
/// each generator of Γ on element indices.
struct Target {
    module: GammaModule,
    elems: Vec<Vec<u64>>,
    act: Vec<Vec<u32>>,
    strides: Vec<usize>,
}

impl Target {
    fn new(m: &GammaModule) -> Target {
        let n = m.group.size();
        let elems: Vec<Vec<u64>> = (0..n).map(|i| m.group.element(i)).collect();
        let act = m
            .action
            .iter()
            .map(|mat| {
                elems
                    .iter()
                    .map(|x| m.group.index(&m.apply(mat, x)) as u32)
                    .collect()
            })
            .collect();
        let mut strides = Vec::with_capacity(m.rank());
        let mut s = 1usize;
        for &d in m.orders() {
            strides.push(s);
            s *= d as usize;
        }
        Target {
            module: m.clone(),
            elems,
            act,
            strides,
        }
    }

    fn size(&self) -> usize {
        self.elems.len()
    }

    /// Index of `Σ c_k x_k`.
    fn combine(&self, terms: &[(usize, i64)], assignment: &[u32]) -> usize {
        let orders = self.module.orders();
        let mut idx = 0usize;
        for (c, &d) in orders.iter().enumerate() {
            let d = d as i64;
            let mut s = 0i64;
            for &(pos, k) in terms {
                s = (s + k % d * self.elems[assignment[pos] as usize][c] as i64) % d;
            }
            idx += s.rem_euclid(d) as usize * self.strides[c];
        }
        idx
    }

    fn killed_by(&self, d: u64) -> Vec<u32> {
        (0..self.size())
            .filter(|&i| d % self.module.group.element_order(&self.elems[i]) == 0)
            .map(|i| i as u32)
            .collect()
    }
}

/// Bitset over target elements.
type Mask = Vec<u64>;

fn mask_new(n: usize) -> Mask {
    vec![0; n.div_ceil(64)]
}

fn mask_get(m: &Mask, i: usize) -> bool {
    m[i / 64] >> (i % 64) & 1 == 1
}

fn mask_set(m: &mut Mask, i: usize) {
    m[i / 64] |= 1 << (i % 64);
}

fn mask_count(m: &Mask) -> usize {
    m.iter().map(|w| w.count_ones() as usize).sum()
}

fn mask_subset(a: &Mask, b: &Mask) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

/// Submodules of a target, with the Möbius function `μ(S, whole)`.
#[derive(Debug, Clone)]
pub struct Lattice {
    pub masks: Vec<Mask>,
    pub mobius: Vec<i64>,
}

impl Lattice {
    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn size_of(&self, k: usize) -> usize {
        mask_count(&self.masks[k])
    }

    pub fn contains(&self, k: usize, element: usize) -> bool {
        mask_get(&self.masks[k], element)
    }
}

/// Smallest submodule containing `base` and `x`.
fn close(t: &Target, base: &Mask, x: usize) -> Mask {
    let mut mask = base.clone();
    let mut members: Vec<usize> = (0..t.size()).filter(|&i| mask_get(base, i)).collect();
    // Γ-orbit of x
    let mut orbit = vec![x];
    let mut seen = HashSet::from([x]);
    let mut k = 0;
    while k < orbit.len() {
        let y = orbit[k];
        for a in &t.act {
            let z = a[y] as usize;
            if seen.insert(z) {
                orbit.push(z);
            }
        }
        k += 1;
    }
    let add = |a: usize, b: usize| -> usize {
        let va = &t.elems[a];
        let vb = &t.elems[b];
        t.module.group.index(&t.module.group.add(va, vb))
    };
    for y in orbit {
        if mask_get(&mask, y) {
            continue;
        }
        let before = members.clone();
        let mut multiple = y;
        while multiple != 0 {
            for &m in &before {
                let z = add(m, multiple);
                if !mask_get(&mask, z) {
                    mask_set(&mut mask, z);
                    members.push(z);
                }
            }
            multiple = add(multiple, y);
        }
    }
    mask
}

fn build_lattice(t: &Target) -> Lattice {
    let n = t.size();
    let mut zero = mask_new(n);
    mask_set(&mut zero, 0);
    let mut seen: HashSet<Mask> = HashSet::from([zero.clone()]);
    let mut queue = vec![zero];
    let mut k = 0;
    while k < queue.len() {
        let s = queue[k].clone();
        for x in 0..n {
            if mask_get(&s, x) {
                continue;
            }
            let next = close(t, &s, x);
            if seen.insert(next.clone()) {
                queue.push(next);
            }
        }
        k += 1;
    }
    queue.sort_by_key(|m| std::cmp::Reverse(mask_count(m)));
    let mut mobius = vec![0i64; queue.len()];
    mobius[0] = 1;
    for a in 1..queue.len() {
        let mut s = 0;
        for b in 0..a {
            if mobius[b] != 0
                && mask_count(&queue[b]) > mask_count(&queue[a])
                && mask_subset(&queue[a], &queue[b])
            {
                s += mobius[b];
            }
        }
        mobius[a] = -s;
    }
    Lattice {
        masks: queue,
        mobius,
    }
}

/// Exhaustive counter with a per-target lattice cache.
pub struct BruteCounter<'a> {
    group: Option<&'a Group>,
    limits: Limits,
    lattices: Mutex<HashMap<(Vec<u64>, Vec<Vec<Vec<i64>>>), Arc<Lattice>>>,
}

impl<'a> BruteCounter<'a> {
    pub fn new(group: &'a Group, limits: Limits) -> BruteCounter<'a> {
        BruteCounter {
            group: Some(group),
            limits,
            lattices: Mutex::new(HashMap::new()),
        }
    }

    /// Counter for modules whose action matrices are arbitrary operators
    /// rather than images of group generators.
    pub fn for_operators(limits: Limits) -> BruteCounter<'static> {
        BruteCounter {
            group: None,
            limits,
            lattices: Mutex::new(HashMap::new()),
        }
    }

    fn check(&self, m: &GammaModule) -> Result<()> {
        if let Some(g) = self.group {
            if g.order() > self.limits.acting_group_order {
                return Err(Error::TooLarge(format!(
                    "acting group of order {} exceeds {}",
                    g.order(),
                    self.limits.acting_group_order
                )));
            }
            if m.action.len() != g.generators().len() {
                return Err(Error::InvariantViolated(
                    "module has the wrong number of action matrices".into(),
                ));
            }
        }
        if m.order() > self.limits.module_order as u128 {
            return Err(Error::TooLarge(format!(
                "module of order {} exceeds {}",
                m.order(),
                self.limits.module_order
            )));
        }
        Ok(())
    }

    /// Γ-maps from the span of one coupling block of `src` into the target,
    /// as tuples of images of the block's basis vectors.
    fn block_homs(&self, src: &GammaModule, block: &[usize], t: &Target) -> Result<Vec<Vec<u32>>> {
        let len = block.len();
        let candidates: Vec<Vec<u32>> = block
            .iter()
            .map(|&j| t.killed_by(src.orders()[j]))
            .collect();
        // constraints f(s e_j) = s f(e_j), scheduled at their last variable
        let mut due: Vec<Vec<(usize, usize, Vec<(usize, i64)>)>> = vec![Vec::new(); len];
        for (s, m) in src.action.iter().enumerate() {
            for (pj, &j) in block.iter().enumerate() {
                let terms: Vec<(usize, i64)> = block
                    .iter()
                    .enumerate()
                    .filter(|(_, &i)| m[i][j] != 0)
                    .map(|(pi, &i)| (pi, m[i][j]))
                    .collect();
                let last = terms.iter().map(|&(p, _)| p).max().unwrap_or(0).max(pj);
                due[last].push((s, pj, terms));
            }
        }
        let mut out = Vec::new();
        let mut assignment = vec![0u32; len];
        let mut leaves = 0u64;
        let budget = self.limits.search_leaves;
        fn rec(
            pos: usize,
            candidates: &[Vec<u32>],
            due: &[Vec<(usize, usize, Vec<(usize, i64)>)>],
            t: &Target,
            assignment: &mut Vec<u32>,
            out: &mut Vec<Vec<u32>>,
            leaves: &mut u64,
            budget: u64,
        ) -> bool {
            if pos == candidates.len() {
                out.push(assignment.clone());
                return true;
            }
            for &c in &candidates[pos] {
                *leaves += 1;
                if *leaves > budget {
                    return false;
                }
                assignment[pos] = c;
                let ok = due[pos].iter().all(|(s, pj, terms)| {
                    t.combine(terms, assignment) == t.act[*s][assignment[*pj] as usize] as usize
                });
                if ok && !rec(pos + 1, candidates, due, t, assignment, out, leaves, budget) {
                    return false;
                }
            }
            true
        }
        if !rec(
            0,
            &candidates,
            &due,
            t,
            &mut assignment,
            &mut out,
            &mut leaves,
            budget,
        ) {
            return Err(Error::TooLarge(format!(
                "homomorphism search exceeded {budget} leaves"
            )));
        }
        Ok(out)
    }

    fn all_block_homs(&self, src: &GammaModule, t: &Target) -> Result<Vec<Vec<Vec<u32>>>> {
        src.blocks()
            .iter()
            .map(|b| self.block_homs(src, b, t))
            .collect()
    }

    fn lattice(&self, t: &Target) -> Arc<Lattice> {
        let key = (t.module.orders().to_vec(), t.module.action.clone());
        if let Some(l) = self.lattices.lock().expect("lattice cache").get(&key) {
            return l.clone();
        }
        let l = Arc::new(build_lattice(t));
        self.lattices
            .lock()
            .expect("lattice cache")
            .insert(key, l.clone());
        l
    }

    pub fn submodule_lattice(&self, m: &GammaModule) -> Result<Arc<Lattice>> {
        self.check(m)?;
        Ok(self.lattice(&Target::new(m)))
    }

    pub fn hom(&self, src: &GammaModule, dst: &GammaModule) -> Result<u128> {
        self.check(src)?;
        self.check(dst)?;
        let t = Target::new(dst);
        let homs = self.all_block_homs(src, &t)?;
        homs.iter().try_fold(1u128, |acc, h| {
            acc.checked_mul(h.len() as u128).ok_or_else(overflow)
        })
    }

    /// Möbius inversion over the submodule lattice of `dst`.
    pub fn sur(&self, src: &GammaModule, dst: &GammaModule) -> Result<u128> {
        self.check(src)?;
        self.check(dst)?;
        let t = Target::new(dst);
        let homs = self.all_block_homs(src, &t)?;
        let lattice = self.lattice(&t);
        let mut total: i128 = 0;
        for (k, mask) in lattice.masks.iter().enumerate() {
            let mu = lattice.mobius[k];
            if mu == 0 {
                continue;
            }
            let mut count = 1i128;
            for block in &homs {
                let inside = block
                    .iter()
                    .filter(|tuple| tuple.iter().all(|&x| mask_get(mask, x as usize)))
                    .count() as i128;
                count = count.checked_mul(inside).ok_or_else(overflow)?;
            }
            total += mu as i128 * count;
        }
        u128::try_from(total)
            .map_err(|_| Error::InvariantViolated("negative surjection count".into()))
    }

    pub fn aut(&self, m: &GammaModule) -> Result<u128> {
        self.sur(m, m)
    }

    /// `Σ_{S ≤ dst} |Sur(src, S)|`, which must equal `|Hom(src, dst)|`.
    pub fn sur_sum_over_submodules(&self, src: &GammaModule, dst: &GammaModule) -> Result<u128> {
        self.check(src)?;
        self.check(dst)?;
        let t = Target::new(dst);
        let homs = self.all_block_homs(src, &t)?;
        let lattice = self.lattice(&t);
        // Hom(src, S) for every S, then invert along the lattice below each S
        let hom_into: Vec<i128> = lattice
            .masks
            .iter()
            .map(|mask| {
                homs.iter()
                    .map(|b| {
                        b.iter()
                            .filter(|tp| tp.iter().all(|&x| mask_get(mask, x as usize)))
                            .count() as i128
                    })
                    .product()
            })
            .collect();
        // Sur(src, S) = Hom(src, S) − Σ_{T < S} Sur(src, T), smallest first
        let n = lattice.len();
        let mut sur = vec![0i128; n];
        for a in (0..n).rev() {
            let mut s = hom_into[a];
            for b in a + 1..n {
                if mask_count(&lattice.masks[b]) < mask_count(&lattice.masks[a])
                    && mask_subset(&lattice.masks[b], &lattice.masks[a])
                {
                    s -= sur[b];
                }
            }
            sur[a] = s;
        }
        Ok(sur.iter().sum::<i128>() as u128)
    }
}

fn as_module(op: &Operand, dec: &Decomposition) -> Result<GammaModule> {
    match op {
        Operand::Module(m) => Ok(m.clone()),
        Operand::Type(t) => GammaModule::from_type(t, dec),
    }
}

fn as_type(op: &Operand, dec: &Decomposition) -> Result<ModuleType> {
    match op {
        Operand::Type(t) => Ok(t.clone()),
        Operand::Module(m) => match &m.type_cache {
            Some(t) => Ok(t.clone()),
            None => m.type_of(dec),
        },
    }
}

/// `|Hom|`, `|Sur|` or `|Aut|` by either method. `Aut` counts automorphisms
/// of `dst`.
pub fn count_maps(
    kind: MapKind,
    src: &Operand,
    dst: &Operand,
    method: Method,
    dec: &Decomposition,
    limits: &Limits,
) -> Result<u128> {
    match method {
        Method::Formula => count_types(kind, &as_type(src, dec)?, &as_type(dst, dec)?, dec),
        Method::BruteForce => {
            let counter = BruteCounter::new(&dec.group, *limits);
            let d = as_module(dst, dec)?;
            match kind {
                MapKind::Aut => counter.aut(&d),
                MapKind::Hom => counter.hom(&as_module(src, dec)?, &d),
                MapKind::Sur => counter.sur(&as_module(src, dec)?, &d),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::builtin::builtin;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn closed_forms() {
        assert_eq!(hom_formula(&p(&[2, 1]), &p(&[1]), 3).unwrap(), 9);
        assert_eq!(aut_formula(&p(&[2, 1]), 3).unwrap(), 108);
        assert_eq!(aut_formula(&p(&[1, 1]), 3).unwrap(), 48);
        assert_eq!(aut_formula(&p(&[1, 1, 1]), 3).unwrap(), 11232);
        assert_eq!(sur_formula(&p(&[1]), &p(&[1, 1]), 3).unwrap(), 0);
        assert_eq!(sur_formula(&p(&[2]), &p(&[1]), 3).unwrap(), 2);
        assert_eq!(sur_formula(&p(&[2]), &p(&[2]), 3).unwrap(), 6);
        assert_eq!(sur_formula(&p(&[1]), &p(&[]), 3).unwrap(), 1);
        assert_eq!(sur_formula(&p(&[]), &p(&[]), 3).unwrap(), 1);
    }

    #[test]
    fn brute_force_matches_on_c2_sign() {
        let g = builtin("C2").unwrap();
        let dec = Decomposition::new(&g).unwrap();
        let counter = BruteCounter::new(&g, Limits::default());
        let parts = [p(&[]), p(&[1]), p(&[2]), p(&[1, 1]), p(&[2, 1])];
        for a in &parts {
            for b in &parts {
                let ta = ModuleType::single(2, 3, a.clone());
                let tb = ModuleType::single(2, 3, b.clone());
                let ma = GammaModule::from_type(&ta, &dec).unwrap();
                let mb = GammaModule::from_type(&tb, &dec).unwrap();
                for kind in [MapKind::Hom, MapKind::Sur] {
                    let f = count_types(kind, &ta, &tb, &dec).unwrap();
                    let bf = match kind {
                        MapKind::Hom => counter.hom(&ma, &mb).unwrap(),
                        _ => counter.sur(&ma, &mb).unwrap(),
                    };
                    assert_eq!(f, bf, "{kind:?} {a} -> {b}");
                }
                assert_eq!(
                    counter.sur_sum_over_submodules(&ma, &mb).unwrap(),
                    counter.hom(&ma, &mb).unwrap()
                );
            }
            let t = ModuleType::single(2, 3, a.clone());
            let m = GammaModule::from_type(&t, &dec).unwrap();
            assert_eq!(
                counter.aut(&m).unwrap(),
                count_types(MapKind::Aut, &t, &t, &dec).unwrap()
            );
        }
    }
}
