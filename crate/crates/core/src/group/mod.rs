//! Finite groups stored as multiplication tables over canonical element ids.
//!
//! Permutation groups index their elements by sorting the image arrays, so the
//! identity is always id 0. Table groups keep the caller's labels except that
//! the identity is moved to 0.

pub mod builtin;
pub mod perm;
pub mod spec;

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use perm::Perm;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClass {
    /// Smallest id in the class.
    pub representative: usize,
    pub members: Vec<usize>,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// A subgroup given by its sorted element ids and a generating set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    pub elements: Vec<usize>,
    pub generators: Vec<usize>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }
}

/// A map between two groups given by its table of images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    pub source_order: usize,
    pub target_order: usize,
    pub image: Vec<usize>,
}

impl GroupHom {
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn is_homomorphism(&self, source: &Group, target: &Group) -> bool {
        if self.image.len() != source.order() || self.target_order != target.order() {
            return false;
        }
        if self.image[0] != 0 {
            return false;
        }
        (0..source.order()).all(|a| {
            (0..source.order())
                .all(|b| self.image[source.mul(a, b)] == target.mul(self.image[a], self.image[b]))
        })
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &GroupHom) -> GroupHom {
        GroupHom {
            source_order: first.source_order,
            target_order: self.target_order,
            image: first.image.iter().map(|&y| self.image[y]).collect(),
        }
    }

    pub fn is_surjective(&self) -> bool {
        let hit: HashSet<usize> = self.image.iter().copied().collect();
        hit.len() == self.target_order
    }

    pub fn kernel(&self) -> Vec<usize> {
        (0..self.source_order)
            .filter(|&x| self.image[x] == 0)
            .collect()
    }
}

/// Left cosets of a subgroup, plus the quotient when the subgroup is normal.
#[derive(Debug, Clone)]
pub struct CosetData {
    /// Cosets `gH`, each sorted, ordered by smallest member.
    pub cosets: Vec<Vec<usize>>,
    pub is_normal: bool,
    pub quotient: Option<(Group, GroupHom)>,
}

#[derive(Debug, Clone)]
pub struct Group {
    name: String,
    degree: Option<usize>,
    perms: Vec<Perm>,
    table: Vec<u32>,
    inverses: Vec<usize>,
    generators: Vec<usize>,
    classes: Vec<ConjugacyClass>,
    class_of: Vec<usize>,
    subgroups: Vec<(String, Subgroup)>,
}

impl Group {
    /// Closure of the given permutations of `{1..degree}`.
    pub fn from_permutations(
        name: &str,
        degree: usize,
        gens: &[Perm],
        cap: usize,
    ) -> Result<Group> {
        for g in gens {
            let mut seen = vec![false; degree];
            if g.len() != degree
                || g.iter().any(|&x| {
                    x as usize >= degree || std::mem::replace(&mut seen[x as usize], true)
                })
            {
                return Err(Error::Parse(format!(
                    "generator is not a permutation of degree {degree}"
                )));
            }
        }
        let id = perm::identity(degree);
        let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = perm::compose(g, &x);
                if seen.insert(y.clone()) {
                    if seen.len() > cap {
                        return Err(Error::CapExceeded {
                            order: seen.len(),
                            cap,
                        });
                    }
                    queue.push_back(y);
                }
            }
        }
        let mut perms: Vec<Perm> = seen.into_iter().collect();
        perms.sort();
        let index: HashMap<&Perm, usize> = perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let n = perms.len();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = index[&perm::compose(&perms[a], &perms[b])] as u32;
            }
        }
        let mut generators: Vec<usize> =
            gens.iter().map(|g| index[g]).filter(|&g| g != 0).collect();
        generators.dedup();
        drop(index);
        Ok(Group::assemble(
            name,
            Some(degree),
            perms,
            table,
            generators,
        ))
    }

    /// Group from a full multiplication table `rows[a][b] = a·b`, validated
    /// exhaustively.
    pub fn from_table(name: &str, rows: &[Vec<usize>], cap: usize) -> Result<Group> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        if n > cap {
            return Err(Error::CapExceeded { order: n, cap });
        }
        if rows
            .iter()
            .any(|r| r.len() != n || r.iter().any(|&x| x >= n))
        {
            return Err(Error::NotAGroup(
                "table is not square with entries in range".into(),
            ));
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|x| rows[e][x] == x && rows[x][e] == x))
            .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
        // relabel so the identity is 0
        let swap = |x: usize| {
            if x == e {
                0
            } else if x == 0 {
                e
            } else {
                x
            }
        };
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[swap(a) * n + swap(b)] = swap(rows[a][b]) as u32;
            }
        }
        let m = |a: usize, b: usize| table[a * n + b] as usize;
        for a in 0..n {
            if !(0..n).any(|b| m(a, b) == 0 && m(b, a) == 0) {
                return Err(Error::NotAGroup(format!("element {a} has no inverse")));
            }
            for b in 0..n {
                for c in 0..n {
                    if m(m(a, b), c) != m(a, m(b, c)) {
                        return Err(Error::NotAGroup(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let generators = greedy_generators(n, &table);
        Ok(Group::assemble(name, None, Vec::new(), table, generators))
    }

    /// Table group whose associativity is known by construction; identity
    /// must be 0 and inverses must exist. Only the cheap checks are run.
    pub(crate) fn from_trusted_table(name: &str, n: usize, table: Vec<u32>) -> Result<Group> {
        if n == 0
            || table.len() != n * n
            || (0..n).any(|x| table[x] as usize != x || table[x * n] as usize != x)
        {
            return Err(Error::NotAGroup("0 is not the identity".into()));
        }
        if (0..n).any(|a| !(0..n).any(|b| table[a * n + b] == 0)) {
            return Err(Error::NotAGroup("an element has no inverse".into()));
        }
        let generators = greedy_generators(n, &table);
        Ok(Group::assemble(name, None, Vec::new(), table, generators))
    }

    pub fn trivial() -> Group {
        Group::assemble("1", Some(1), vec![perm::identity(1)], vec![0], Vec::new())
    }

    /// Cyclic group of order `n` acting regularly on `n` points.
    pub fn cyclic(n: usize) -> Group {
        assert!(n >= 1);
        if n == 1 {
            let mut g = Group::trivial();
            g.name = "C1".into();
            return g;
        }
        let gen: Perm = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
        Group::from_permutations(&format!("C{n}"), n, &[gen], usize::MAX).expect("cyclic group")
    }

    fn assemble(
        name: &str,
        degree: Option<usize>,
        perms: Vec<Perm>,
        table: Vec<u32>,
        generators: Vec<usize>,
    ) -> Group {
        let n = (table.len() as f64).sqrt().round() as usize;
        let inverses = (0..n)
            .map(|a| (0..n).find(|&b| table[a * n + b] == 0).expect("inverse"))
            .collect::<Vec<_>>();
        let mut g = Group {
            name: name.to_string(),
            degree,
            perms,
            table,
            inverses,
            generators,
            classes: Vec::new(),
            class_of: Vec::new(),
            subgroups: Vec::new(),
        };
        g.compute_classes();
        g
    }

    fn compute_classes(&mut self) {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for x in 0..n {
            if class_of[x] != usize::MAX {
                continue;
            }
            // orbit under conjugation by the generators
            class_of[x] = classes.len();
            let mut members = vec![x];
            let mut next = 0;
            while next < members.len() {
                let y = members[next];
                next += 1;
                for &g in &self.generators {
                    let z = self.conjugate(g, y);
                    if class_of[z] == usize::MAX {
                        class_of[z] = classes.len();
                        members.push(z);
                    }
                }
            }
            members.sort_unstable();
            classes.push(ConjugacyClass {
                representative: x,
                members,
            });
        }
        self.classes = classes;
        self.class_of = class_of;
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: &str) {
        self.name = name.to_string();
    }

    pub fn order(&self) -> usize {
        self.inverses.len()
    }

    /// Permutation degree, or `None` for table groups.
    pub fn degree(&self) -> Option<usize> {
        self.degree
    }

    pub fn perm(&self, x: usize) -> Option<&Perm> {
        self.perms.get(x)
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `g x g⁻¹`.
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut r = 0;
        for _ in 0..k.unsigned_abs() {
            r = self.mul(r, base);
        }
        r
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order()).fold(1, |acc, a| {
            crate::arith::lcm(acc as u64, self.element_order(a) as u64) as usize
        })
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn is_abelian(&self) -> bool {
        self.classes.len() == self.order()
    }

    /// Id of the element with the given image array.
    pub fn find_perm(&self, p: &[u32]) -> Option<usize> {
        self.perms.binary_search_by(|q| q.as_slice().cmp(p)).ok()
    }

    /// Parses an element written in cycle notation, or as `#id` for any group.
    pub fn parse_element(&self, text: &str) -> Result<usize> {
        let text = text.trim();
        if let Some(id) = text.strip_prefix('#') {
            let id: usize = id
                .parse()
                .map_err(|_| Error::Parse(format!("bad element id `{text}`")))?;
            return if id < self.order() {
                Ok(id)
            } else {
                Err(Error::Parse(format!("element id {id} out of range")))
            };
        }
        let degree = self
            .degree
            .ok_or_else(|| Error::Parse(format!("`{text}`: table groups take `#id` elements")))?;
        let p = perm::parse_cycles(text, degree)?;
        self.find_perm(&p)
            .ok_or_else(|| Error::Parse(format!("`{text}` is not in {}", self.name)))
    }

    pub fn element_label(&self, x: usize) -> String {
        match self.perms.get(x) {
            Some(p) => perm::format_cycles(p),
            None => format!("#{x}"),
        }
    }

    pub fn subgroup_generated(&self, gens: &[usize]) -> Subgroup {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(g, x);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        let mut generators: Vec<usize> = gens.iter().copied().filter(|&g| g != 0).collect();
        generators.sort_unstable();
        generators.dedup();
        Subgroup {
            elements: (0..self.order()).filter(|&x| seen[x]).collect(),
            generators,
        }
    }

    /// Validates that `elements` is closed under products and inverses.
    pub fn subgroup_from_elements(&self, elements: &[usize]) -> Result<Subgroup> {
        let mut els: Vec<usize> = elements.to_vec();
        els.sort_unstable();
        els.dedup();
        if els.iter().any(|&x| x >= self.order()) {
            return Err(Error::NotASubgroup("element id out of range".into()));
        }
        let set: HashSet<usize> = els.iter().copied().collect();
        if !set.contains(&0) {
            return Err(Error::NotASubgroup("identity missing".into()));
        }
        for &a in &els {
            if !set.contains(&self.inv(a)) {
                return Err(Error::NotASubgroup(format!("inverse of {a} missing")));
            }
            for &b in &els {
                if !set.contains(&self.mul(a, b)) {
                    return Err(Error::NotASubgroup(format!(
                        "product of {a} and {b} missing"
                    )));
                }
            }
        }
        let generators = greedy_subset_generators(self, &els);
        Ok(Subgroup {
            elements: els,
            generators,
        })
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            elements: (0..self.order()).collect(),
            generators: self.generators.clone(),
        }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup {
            elements: vec![0],
            generators: Vec::new(),
        }
    }

    pub fn add_subgroup(&mut self, name: &str, gens: &[usize]) {
        let h = self.subgroup_generated(gens);
        self.subgroups.retain(|(n, _)| n != name);
        self.subgroups.push((name.to_string(), h));
    }

    pub fn named_subgroup(&self, name: &str) -> Option<&Subgroup> {
        self.subgroups
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, h)| h)
    }

    pub fn subgroups(&self) -> &[(String, Subgroup)] {
        &self.subgroups
    }

    /// Every subgroup generated by at most two elements, which for the
    /// shipped groups is every subgroup; sorted by order then elements.
    pub fn two_generated_subgroups(&self) -> Vec<Subgroup> {
        let n = self.order();
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut out = Vec::new();
        for a in 0..n {
            for b in a..n {
                let h = self.subgroup_generated(&[a, b]);
                if seen.insert(h.elements.clone()) {
                    out.push(h);
                }
            }
        }
        out.sort_by(|x, y| {
            x.order()
                .cmp(&y.order())
                .then_with(|| x.elements.cmp(&y.elements))
        });
        out
    }

    pub fn is_subgroup(&self, h: &Subgroup) -> bool {
        self.subgroup_from_elements(&h.elements).is_ok()
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.generators
            .iter()
            .all(|&g| h.elements.iter().all(|&x| h.contains(self.conjugate(g, x))))
    }

    /// Left cosets `gH`, each sorted, ordered by smallest member.
    pub fn left_cosets(&self, h: &Subgroup) -> Vec<Vec<usize>> {
        let mut assigned = vec![false; self.order()];
        let mut cosets = Vec::new();
        for g in 0..self.order() {
            if assigned[g] {
                continue;
            }
            let mut c: Vec<usize> = h.elements.iter().map(|&x| self.mul(g, x)).collect();
            c.sort_unstable();
            for &x in &c {
                assigned[x] = true;
            }
            cosets.push(c);
        }
        cosets
    }

    pub fn coset_and_quotient(&self, h: &Subgroup) -> Result<CosetData> {
        if !self.is_subgroup(h) {
            return Err(Error::NotASubgroup(format!(
                "given set is not a subgroup of {}",
                self.name
            )));
        }
        let cosets = self.left_cosets(h);
        let is_normal = self.is_normal(h);
        let quotient = is_normal.then(|| self.quotient_by_cosets(h, &cosets));
        Ok(CosetData {
            cosets,
            is_normal,
            quotient,
        })
    }

    /// Quotient by a normal subgroup with its projection.
    pub fn quotient(&self, h: &Subgroup) -> Result<(Group, GroupHom)> {
        if !self.is_subgroup(h) {
            return Err(Error::NotASubgroup(format!(
                "given set is not a subgroup of {}",
                self.name
            )));
        }
        if !self.is_normal(h) {
            return Err(Error::NotNormal(format!(
                "subgroup of order {} in {}",
                h.order(),
                self.name
            )));
        }
        Ok(self.quotient_by_cosets(h, &self.left_cosets(h)))
    }

    fn quotient_by_cosets(&self, h: &Subgroup, cosets: &[Vec<usize>]) -> (Group, GroupHom) {
        let k = cosets.len();
        let mut coset_of = vec![0usize; self.order()];
        for (i, c) in cosets.iter().enumerate() {
            for &x in c {
                coset_of[x] = i;
            }
        }
        let mut table = vec![0u32; k * k];
        for i in 0..k {
            for j in 0..k {
                table[i * k + j] = coset_of[self.mul(cosets[i][0], cosets[j][0])] as u32;
            }
        }
        let mut generators: Vec<usize> = self
            .generators
            .iter()
            .map(|&g| coset_of[g])
            .filter(|&c| c != 0)
            .collect();
        generators.sort_unstable();
        generators.dedup();
        let name = format!("{}/N{}", self.name, h.order());
        let q = Group::assemble(&name, None, Vec::new(), table, generators);
        let proj = GroupHom {
            source_order: self.order(),
            target_order: k,
            image: coset_of,
        };
        (q, proj)
    }

    /// The subgroup as a table group, with its inclusion into `self`.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> (Group, GroupHom) {
        let k = h.order();
        let pos = |x: usize| h.elements.binary_search(&x).expect("closed subgroup");
        let mut table = vec![0u32; k * k];
        for i in 0..k {
            for j in 0..k {
                table[i * k + j] = pos(self.mul(h.elements[i], h.elements[j])) as u32;
            }
        }
        let generators = h.generators.iter().map(|&g| pos(g)).collect();
        let perms = if self.perms.is_empty() {
            Vec::new()
        } else {
            h.elements.iter().map(|&x| self.perms[x].clone()).collect()
        };
        let sub = Group::assemble(
            &format!("{}<{}>", self.name, k),
            self.degree.filter(|_| !perms.is_empty()),
            perms,
            table,
            generators,
        );
        let inc = GroupHom {
            source_order: k,
            target_order: self.order(),
            image: h.elements.clone(),
        };
        (sub, inc)
    }

    /// Exhaustive check of the group axioms on the stored table.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.order();
        for a in 0..n {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                return Err(Error::NotAGroup(format!("0 is not an identity at {a}")));
            }
            if self.mul(a, self.inv(a)) != 0 || self.mul(self.inv(a), a) != 0 {
                return Err(Error::NotAGroup(format!("bad inverse at {a}")));
            }
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::NotAGroup(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        if self.subgroup_generated(&self.generators).order() != n {
            return Err(Error::NotAGroup(
                "generators do not generate the element set".into(),
            ));
        }
        Ok(())
    }
}

fn greedy_generators(n: usize, table: &[u32]) -> Vec<usize> {
    let mut inside = vec![false; n];
    inside[0] = true;
    let mut gens = Vec::new();
    for g in 1..n {
        if inside[g] {
            continue;
        }
        gens.push(g);
        let mut members: Vec<usize> = (0..n).filter(|&x| inside[x]).collect();
        let mut queue: VecDeque<usize> = members.iter().copied().collect();
        while let Some(x) = queue.pop_front() {
            for &s in &gens {
                for y in [table[s * n + x] as usize, table[x * n + s] as usize] {
                    if !inside[y] {
                        inside[y] = true;
                        members.push(y);
                        queue.push_back(y);
                    }
                }
            }
        }
    }
    gens
}

fn greedy_subset_generators(g: &Group, els: &[usize]) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut current = g.trivial_subgroup();
    for &x in els {
        if !current.contains(x) {
            gens.push(x);
            current = g.subgroup_generated(&gens);
        }
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> Group {
        let gens = [
            perm::parse_cycles("(1 2)", 3).unwrap(),
            perm::parse_cycles("(1 2 3)", 3).unwrap(),
        ];
        Group::from_permutations("S3", 3, &gens, 200).unwrap()
    }

    #[test]
    fn s3_basics() {
        let g = s3();
        assert_eq!(g.order(), 6);
        g.check_axioms().unwrap();
        let sizes: Vec<usize> = g.classes().iter().map(|c| c.size()).collect();
        let mut sorted = sizes.clone();
        sorted.sort();
        assert_eq!(sorted, vec![1, 2, 3]);
        assert_eq!(g.classes()[0].members, vec![0]);
        assert_eq!(g.exponent(), 6);
    }

    #[test]
    fn quotient_by_a3() {
        let g = s3();
        let r = g.parse_element("(1 2 3)").unwrap();
        let a3 = g.subgroup_generated(&[r]);
        let data = g.coset_and_quotient(&a3).unwrap();
        assert_eq!(data.cosets.len(), 2);
        let (q, proj) = data.quotient.unwrap();
        assert_eq!(q.order(), 2);
        q.check_axioms().unwrap();
        assert!(proj.is_homomorphism(&g, &q));
        let t = g.parse_element("(1 2)").unwrap();
        let h = g.subgroup_generated(&[t]);
        let data = g.coset_and_quotient(&h).unwrap();
        assert_eq!(data.cosets.len(), 3);
        assert!(!data.is_normal);
        assert!(g.quotient(&h).is_err());
    }

    #[test]
    fn table_groups() {
        // Z/3 with the identity written last
        let rows = vec![vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]];
        let g = Group::from_table("Z3", &rows, 200).unwrap();
        assert_eq!(g.order(), 3);
        g.check_axioms().unwrap();
        let bad = vec![vec![0, 1], vec![1, 1]];
        assert!(matches!(
            Group::from_table("x", &bad, 200),
            Err(Error::NotAGroup(_))
        ));
        assert!(matches!(
            Group::from_table("Z3", &rows, 2),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn cap_and_trivial() {
        let t = Group::trivial();
        assert_eq!(t.order(), 1);
        assert_eq!(t.classes().len(), 1);
        let gens = [
            perm::parse_cycles("(1 2 3 4 5 6)", 6).unwrap(),
            perm::parse_cycles("(1 2)", 6).unwrap(),
        ];
        assert!(matches!(
            Group::from_permutations("S6", 6, &gens, 200),
            Err(Error::CapExceeded { .. })
        ));
        assert_eq!(Group::cyclic(12).order(), 12);
    }

    #[test]
    fn subgroup_inclusion() {
        let g = s3();
        let r = g.parse_element("(1 2 3)").unwrap();
        let h = g.subgroup_generated(&[r]);
        let (sub, inc) = g.subgroup_as_group(&h);
        assert!(inc.is_homomorphism(&sub, &g));
        assert_eq!(inc.image, h.elements);
    }
}
