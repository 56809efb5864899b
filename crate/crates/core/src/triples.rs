//! Class triples `(G, c, π)`: a group `G` onto Γ with abelian kernel of order
//! prime to `|Γ|`, and a lift `c` of an element `s` with `s² = 1`.

use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::group::{Group, GroupHom, Subgroup};
use crate::limits::Limits;
use crate::module::counting::{count_types, BruteCounter, MapKind};
use crate::module::GammaModule;
use crate::rep::Decomposition;

#[derive(Debug, Clone)]
pub struct ClassTriple {
    pub group: Group,
    pub projection: GroupHom,
    /// Image of the archimedean map, an element of order dividing 2 in `G`.
    pub c: usize,
    /// Its image in Γ.
    pub s: usize,
    /// Sorted element ids of `ker π`.
    pub kernel: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AutMethod {
    Formula,
    BruteForce,
}

fn cyclic_sub(g: &Group, s: usize) -> Subgroup {
    g.subgroup_generated(&[s])
}

/// `h ⋊ Γ` with `(a, γ)(b, δ) = (a + γ·b, γδ)`; element `(a, γ)` has id
/// `γ·|h| + a`, and `c = (0, s)`.
pub fn build_class_triple(
    h: &GammaModule,
    gamma: &Group,
    s: usize,
    limits: &Limits,
) -> Result<ClassTriple> {
    if gamma.mul(s, s) != gamma.identity() {
        return Err(Error::InvariantViolated("s must satisfy s² = 1".into()));
    }
    let n = gamma.order();
    let k = h.group.size();
    if gcd(k as u64, n as u64) != 1 {
        return Err(Error::InvariantViolated(format!(
            "|H| = {k} is not prime to |Γ| = {n}"
        )));
    }
    if !h.has_trivial_invariants(gamma)? {
        return Err(Error::InvariantViolated("H^Γ is not trivial".into()));
    }
    if n * k > limits.triple_group_order {
        return Err(Error::CapExceeded {
            order: n * k,
            cap: limits.triple_group_order,
        });
    }
    let mats = h.element_matrices(gamma)?;
    let elems: Vec<Vec<u64>> = (0..k).map(|i| h.group.element(i)).collect();
    let act: Vec<Vec<usize>> = mats
        .iter()
        .map(|m| {
            elems
                .iter()
                .map(|x| h.group.index(&h.apply(m, x)))
                .collect()
        })
        .collect();
    let add: Vec<Vec<usize>> = elems
        .iter()
        .map(|x| {
            elems
                .iter()
                .map(|y| h.group.index(&h.group.add(x, y)))
                .collect()
        })
        .collect();
    let mut table = Vec::with_capacity(n * k * n * k);
    for g1 in 0..n {
        for a in 0..k {
            for g2 in 0..n {
                let base = gamma.mul(g1, g2) * k;
                table.extend(act[g1].iter().map(|&b| (base + add[a][b]) as u32));
            }
        }
    }
    let group = Group::from_trusted_table(&format!("H:{}", gamma.name()), n * k, table)?;
    let projection = GroupHom {
        source_order: n * k,
        target_order: n,
        image: (0..n * k).map(|x| x / k).collect(),
    };
    let triple = ClassTriple {
        group,
        projection,
        c: s * k,
        s,
        kernel: (0..k).collect(),
    };
    triple.check(gamma)?;
    Ok(triple)
}

impl ClassTriple {
    /// Every defining property, checked exhaustively.
    pub fn check(&self, gamma: &Group) -> Result<()> {
        let g = &self.group;
        if !self.projection.is_homomorphism(g, gamma) || !self.projection.is_surjective() {
            return Err(Error::InvariantViolated(
                "π is not a surjective homomorphism".into(),
            ));
        }
        let kernel = self.projection.kernel();
        if kernel != self.kernel {
            return Err(Error::InvariantViolated(
                "stored kernel differs from ker π".into(),
            ));
        }
        if kernel
            .iter()
            .any(|&a| kernel.iter().any(|&b| g.mul(a, b) != g.mul(b, a)))
        {
            return Err(Error::InvariantViolated("ker π is not abelian".into()));
        }
        if gcd(kernel.len() as u64, gamma.order() as u64) != 1 {
            return Err(Error::InvariantViolated(
                "|ker π| is not prime to |Γ|".into(),
            ));
        }
        if self.projection.apply(self.c) != self.s || g.mul(self.c, self.c) != g.identity() {
            return Err(Error::InvariantViolated(
                "c is not an involutive lift of s".into(),
            ));
        }
        if self.c != g.identity() && kernel.contains(&self.c) {
            return Err(Error::InvariantViolated("im c meets ker π".into()));
        }
        // (ker π)^Γ: kernel elements central in G
        let fixed = kernel
            .iter()
            .filter(|&&a| (0..g.order()).all(|x| g.conjugate(x, a) == a))
            .count();
        if fixed != 1 {
            return Err(Error::InvariantViolated(
                "ker π has nontrivial Γ-invariants".into(),
            ));
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }
}

/// Backtracking search for automorphisms of `G` over Γ, one generator image
/// at a time. A partial assignment is kept only while it extends to an
/// injective homomorphism on the subgroup generated so far.
struct FiberSearch<'a> {
    t: &'a ClassTriple,
    /// `gens[0] = c`, then generators of `G`.
    gens: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    visits: u64,
    budget: u64,
}

impl<'a> FiberSearch<'a> {
    fn new(t: &'a ClassTriple, limits: &Limits) -> FiberSearch<'a> {
        let g = &t.group;
        let mut gens = vec![t.c];
        gens.extend(g.generators().iter().copied().filter(|&x| x != t.c));
        // lifts of Γ first, so module generators meet the conjugation constraints
        let id = t.projection.apply(g.identity());
        gens[1..].sort_by_key(|&x| t.projection.apply(x) == id);
        let candidates = gens
            .iter()
            .map(|&x| {
                (0..g.order())
                    .filter(|&y| {
                        t.projection.apply(y) == t.projection.apply(x)
                            && g.element_order(y) == g.element_order(x)
                    })
                    .collect()
            })
            .collect();
        FiberSearch {
            t,
            gens,
            candidates,
            visits: 0,
            budget: limits.search_leaves,
        }
    }

    /// The assignment `gens[k] ↦ images[k]` is consistent and injective on
    /// the subgroup generated by the assigned generators.
    fn consistent(&mut self, images: &[usize]) -> Result<bool> {
        self.visits += 1;
        if self.visits > self.budget {
            return Err(Error::TooLarge(format!(
                "automorphism search exceeded {} steps",
                self.budget
            )));
        }
        let g = &self.t.group;
        let n = g.order();
        let gens = &self.gens[..images.len()];
        let mut phi = vec![usize::MAX; n];
        let mut used = vec![false; n];
        phi[g.identity()] = g.identity();
        used[g.identity()] = true;
        let mut queue = std::collections::VecDeque::from([g.identity()]);
        while let Some(x) = queue.pop_front() {
            for (k, &s) in gens.iter().enumerate() {
                let y = g.mul(s, x);
                let v = g.mul(images[k], phi[x]);
                if phi[y] == usize::MAX {
                    if std::mem::replace(&mut used[v], true) {
                        return Ok(false);
                    }
                    phi[y] = v;
                    queue.push_back(y);
                } else if phi[y] != v {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Some automorphism over Γ extends the given images of the first
    /// generators.
    fn extends(&mut self, images: &mut Vec<usize>) -> Result<bool> {
        if !self.consistent(images)? {
            return Ok(false);
        }
        let k = images.len();
        if k == self.gens.len() {
            return Ok(true);
        }
        for idx in 0..self.candidates[k].len() {
            images.push(self.candidates[k][idx]);
            let ok = self.extends(images)?;
            images.pop();
            if ok {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// `|Aut(G, c, π)|` as the product of orbit lengths along the chain of
    /// pointwise stabilizers of `gens`.
    fn stabilizer_order(&mut self) -> Result<u128> {
        let mut total = 1u128;
        let mut prefix = vec![self.gens[0]];
        for k in 1..self.gens.len() {
            let mut orbit = 0u128;
            for idx in 0..self.candidates[k].len() {
                let y = self.candidates[k][idx];
                prefix.push(y);
                if y == self.gens[k] || self.extends(&mut prefix)? {
                    orbit += 1;
                }
                prefix.pop();
            }
            total *= orbit;
            prefix.push(self.gens[k]);
        }
        Ok(total)
    }
}

/// `|Aut(G, c, π)|`: by `|H^{⟨s⟩}|·|Aut_Γ(H)|`, or by exhaustive search over
/// automorphisms of `G` commuting with `π` and fixing `c`.
pub fn aut_count(
    t: &ClassTriple,
    h: &GammaModule,
    dec: &Decomposition,
    method: AutMethod,
    limits: &Limits,
) -> Result<u128> {
    let gamma = &dec.group;
    match method {
        AutMethod::Formula => {
            let fixed = h.fixed_count(gamma, &cyclic_sub(gamma, t.s))?;
            let aut = match h.type_of(dec) {
                Ok(ty) => count_types(MapKind::Aut, &ty, &ty, dec)?,
                Err(_) => BruteCounter::new(gamma, *limits).aut(h)?,
            };
            Ok(fixed * aut)
        }
        AutMethod::BruteForce => FiberSearch::new(t, limits).stabilizer_order(),
    }
}

/// True when every valid archimedean lift `c'` of `s` gives a triple
/// isomorphic to `(G, c, π)`.
pub fn verify_uniqueness(t: &ClassTriple, limits: &Limits) -> Result<bool> {
    let g = &t.group;
    let mut search = FiberSearch::new(t, limits);
    for x in 0..g.order() {
        let valid = t.projection.apply(x) == t.s
            && g.mul(x, x) == g.identity()
            && (x == g.identity() || !t.kernel.contains(&x));
        if valid && x != t.c && !search.extends(&mut vec![x])? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Sections `σ: Γ → G` with `π∘σ = id`.
pub fn count_splittings(t: &ClassTriple, gamma: &Group) -> Result<usize> {
    let g = &t.group;
    let gens = gamma.generators();
    let fibers: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| {
            (0..g.order())
                .filter(|&x| t.projection.apply(x) == s)
                .collect()
        })
        .collect();
    let mut count = 0;
    let mut digits = vec![0usize; gens.len()];
    if gens.is_empty() {
        return Ok(1);
    }
    loop {
        // σ is determined by the generator images; check it is well defined
        let mut sigma = vec![usize::MAX; gamma.order()];
        sigma[gamma.identity()] = g.identity();
        let mut queue = std::collections::VecDeque::from([gamma.identity()]);
        let mut ok = true;
        'bfs: while let Some(x) = queue.pop_front() {
            for (k, &s) in gens.iter().enumerate() {
                let y = gamma.mul(s, x);
                let v = g.mul(fibers[k][digits[k]], sigma[x]);
                if sigma[y] == usize::MAX {
                    sigma[y] = v;
                    queue.push_back(y);
                } else if sigma[y] != v {
                    ok = false;
                    break 'bfs;
                }
            }
        }
        if ok {
            count += 1;
        }
        let mut k = 0;
        loop {
            if k == digits.len() {
                return Ok(count);
            }
            digits[k] += 1;
            if digits[k] < fibers[k].len() {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::builtin::builtin;

    #[test]
    fn s3_from_inversion() {
        let c2 = builtin("C2").unwrap();
        let dec = Decomposition::new(&c2).unwrap();
        let limits = Limits::default();
        let h = GammaModule::new(vec![3], vec![vec![vec![-1]]]).unwrap();
        let imag = build_class_triple(&h, &c2, 1, &limits).unwrap();
        assert_eq!(imag.order(), 6);
        assert!(!imag.group.is_abelian());
        assert_eq!(
            aut_count(&imag, &h, &dec, AutMethod::Formula, &limits).unwrap(),
            2
        );
        assert_eq!(
            aut_count(&imag, &h, &dec, AutMethod::BruteForce, &limits).unwrap(),
            2
        );
        let real = build_class_triple(&h, &c2, 0, &limits).unwrap();
        assert_eq!(
            aut_count(&real, &h, &dec, AutMethod::Formula, &limits).unwrap(),
            6
        );
        assert_eq!(
            aut_count(&real, &h, &dec, AutMethod::BruteForce, &limits).unwrap(),
            6
        );
        assert!(verify_uniqueness(&imag, &limits).unwrap());
        assert_eq!(count_splittings(&imag, &c2).unwrap(), 3);
        let zero = GammaModule::zero(1);
        let t0 = build_class_triple(&zero, &c2, 0, &limits).unwrap();
        assert_eq!(t0.order(), 2);
        assert_eq!(
            aut_count(&t0, &zero, &dec, AutMethod::BruteForce, &limits).unwrap(),
            1
        );
    }
}
