//! The augmentation idempotent of a subgroup, the integral Hecke order it
//! cuts out, and the correspondence between modules over the two.

pub mod functor;
pub mod morita;

use num_traits::{One, Zero};

use crate::arith::plocal::{echelon, relation_basis};
use crate::arith::qmat::{self, solve_in_span};
use crate::arith::{is_p_integral, val, Q};
use crate::error::{Error, Result};
use crate::group::Subgroup;
use crate::rep::algebra::{self, AlgElem};
use crate::rep::rank::induced_trivial;
use crate::rep::{Decomposition, Verdict};

pub use functor::{character_module, invariants_functor, omodule_from_generator, OModule};
pub use morita::{
    hecke_size_power, lift_truncation, morita_lift, nongalois_table, rank_independence_check,
    rank_transfer, IndependenceReport, MoritaLift, NonGaloisRow,
};

/// `a = Ind_{Γ'}^Γ 1 − 1` and its central idempotent.
#[derive(Debug, Clone)]
pub struct Augmentation {
    pub subgroup: Subgroup,
    /// `a` on classes.
    pub character: Vec<Q>,
    /// Nontrivial components meeting `a`, ascending.
    pub components: Vec<usize>,
    /// `⟨φ_i, a⟩` for each listed component.
    pub multiplicities: Vec<u64>,
    pub idempotent: AlgElem,
    /// `e₁' = |Γ'|⁻¹ Σ_{γ∈Γ'} γ`.
    pub subgroup_idempotent: AlgElem,
}

impl Augmentation {
    /// `a` is a single absolutely irreducible character.
    pub fn is_absolutely_irreducible(&self, dec: &Decomposition) -> bool {
        self.components.len() == 1
            && self.multiplicities[0] == 1
            && dec.components[self.components[0] - 1].orbit.len() == 1
    }

    pub fn multiplicity(&self, i: usize) -> Option<u64> {
        self.components
            .iter()
            .position(|&c| c == i)
            .map(|k| self.multiplicities[k])
    }

    /// `Σ_i [K_i:Q]·m_i²`, the dimension of `e e₁' Q[Γ] e₁'`.
    pub fn hecke_dimension(&self, dec: &Decomposition) -> usize {
        self.components
            .iter()
            .zip(&self.multiplicities)
            .map(|(&i, &m)| dec.components[i - 1].orbit.len() * (m * m) as usize)
            .sum()
    }
}

/// Builds the augmentation idempotent from the character support and from
/// `e_i e₁' ≠ 0`, and errors if the two disagree.
pub fn augmentation_component(dec: &Decomposition, sub: &Subgroup) -> Result<Augmentation> {
    let g = &dec.group;
    if !g.is_subgroup(sub) {
        return Err(Error::NotASubgroup(
            "subgroup is not contained in the group".into(),
        ));
    }
    let mut character = induced_trivial(dec, sub);
    for x in character.iter_mut() {
        *x -= Q::one();
    }
    let e1p = algebra::subgroup_idempotent(g, &sub.elements);
    let mut by_character = Vec::new();
    let mut multiplicities = Vec::new();
    for c in dec.components.iter().skip(1) {
        let ip = dec.table.inner_rational(&character, &c.character)
            / Q::from_integer((c.orbit.len() as i64).into());
        if !ip.is_zero() {
            by_character.push(c.index);
            multiplicities.push(
                ip.to_integer()
                    .try_into()
                    .expect("nonnegative multiplicity"),
            );
        }
    }
    let by_product: Vec<usize> = dec
        .components
        .iter()
        .skip(1)
        .filter(|c| !algebra::is_zero(&algebra::mul(g, &c.idempotent, &e1p)))
        .map(|c| c.index)
        .collect();
    if by_character != by_product {
        return Err(Error::InvariantViolated(format!(
            "character support {by_character:?} differs from idempotent support {by_product:?}"
        )));
    }
    let idempotent = dec.idempotent_sum(&by_character);
    Ok(Augmentation {
        subgroup: sub.clone(),
        character,
        components: by_character,
        multiplicities,
        idempotent,
        subgroup_idempotent: e1p,
    })
}

/// For every component: `e₁' e_i ≠ 0` exactly when `i = 1` or `e_i` lies
/// under the augmentation idempotent.
pub fn augmentation_support_holds(dec: &Decomposition, aug: &Augmentation) -> bool {
    let g = &dec.group;
    dec.components.iter().all(|c| {
        let meets = !algebra::is_zero(&algebra::mul(g, &aug.subgroup_idempotent, &c.idempotent));
        let under = algebra::mul(g, &c.idempotent, &aug.idempotent) == c.idempotent;
        meets == (c.index == 1 || under)
    })
}

/// The order localized at one prime.
#[derive(Debug, Clone)]
pub struct LocalOrder {
    pub prime: u64,
    /// Z_(p)-basis, as elements of Q[Γ].
    pub basis: Vec<AlgElem>,
    /// `basis[k] = Σ_σ reps[k][σ] · e σ e₁'` with p-integral coefficients.
    pub representatives: Vec<Vec<Q>>,
    /// Z_(p)-basis of the relations among the elements `e σ e₁'`.
    pub relations: Vec<Vec<Q>>,
    /// `basis[a]·basis[b] = Σ_k structure[a][b][k]·basis[k]`.
    pub structure: Vec<Vec<Vec<Q>>>,
    /// Coordinates of the identity `e e₁'`.
    pub identity: Vec<Q>,
    /// Reduced-trace discriminant is a unit on every component.
    pub maximal: bool,
}

impl LocalOrder {
    /// Coordinates of `x` in the basis, if `x` is in the rational span.
    pub fn coordinates(&self, x: &[Q]) -> Option<Vec<Q>> {
        solve_in_span(&self.basis, x)
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        self.coordinates(x)
            .is_some_and(|c| c.iter().all(|q| is_p_integral(q, self.prime)))
    }

    /// The listed elements form a Z_(p)-basis of the order.
    pub fn is_basis(&self, elems: &[AlgElem]) -> bool {
        if elems.len() != self.basis.len() {
            return false;
        }
        let Some(rows) = elems
            .iter()
            .map(|x| self.coordinates(x))
            .collect::<Option<Vec<_>>>()
        else {
            return false;
        };
        rows.iter().flatten().all(|q| is_p_integral(q, self.prime))
            && val(&qmat::determinant(&rows), self.prime) == Some(0)
    }
}

#[derive(Debug, Clone)]
pub struct HeckeOrder {
    pub augmentation: Augmentation,
    /// Basis of `e e₁' Q[Γ] e₁'`.
    pub rational_basis: Vec<AlgElem>,
    pub rank: usize,
    /// `(component, dim of e_i e₁' Q[Γ] e₁')`.
    pub component_dims: Vec<(usize, usize)>,
    pub local: Vec<LocalOrder>,
    /// `e e₁'`.
    pub identity: AlgElem,
}

impl HeckeOrder {
    pub fn at(&self, p: u64) -> Option<&LocalOrder> {
        self.local.iter().find(|l| l.prime == p)
    }

    pub fn primes(&self) -> Vec<u64> {
        self.local.iter().map(|l| l.prime).collect()
    }
}

fn local_order(dec: &Decomposition, aug: &Augmentation, p: u64) -> Result<LocalOrder> {
    let g = &dec.group;
    let e = &aug.idempotent;
    let e1p = &aug.subgroup_idempotent;
    let rows: Vec<AlgElem> = (0..g.order())
        .map(|s| algebra::mul(g, &algebra::left_mul_elem(g, s, e), e1p))
        .collect();
    let ech = echelon(&rows, p);
    let r = ech.rank;
    // left Γ'-invariants of the lattice, in echelon coordinates
    let sub_gens = &aug.subgroup.generators;
    let defects: Vec<Vec<Q>> = ech
        .basis
        .iter()
        .map(|b| {
            sub_gens
                .iter()
                .flat_map(|&s| algebra::sub(&algebra::left_mul_elem(g, s, b), b))
                .collect()
        })
        .collect();
    let coeffs = if sub_gens.is_empty() {
        qmat::identity(r)
    } else {
        relation_basis(&defects, p)
    };
    let mut basis = Vec::with_capacity(coeffs.len());
    let mut representatives = Vec::with_capacity(coeffs.len());
    for c in &coeffs {
        let mut y = algebra::zero(g);
        let mut rep = vec![Q::zero(); g.order()];
        for (k, ck) in c.iter().enumerate() {
            if ck.is_zero() {
                continue;
            }
            y = algebra::add(&y, &algebra::scale(&ech.basis[k], ck));
            rep = algebra::add(&rep, &algebra::scale(&ech.transform[k], ck));
        }
        basis.push(y);
        representatives.push(rep);
    }
    let n = basis.len();
    let mut structure = vec![vec![Vec::new(); n]; n];
    for a in 0..n {
        for b in 0..n {
            let prod = algebra::mul(g, &basis[a], &basis[b]);
            let coords = solve_in_span(&basis, &prod)
                .filter(|c| c.iter().all(|q| is_p_integral(q, p)))
                .ok_or_else(|| {
                    Error::InvariantViolated(format!(
                        "order is not closed under multiplication at {p}"
                    ))
                })?;
            structure[a][b] = coords;
        }
    }
    let one = algebra::mul(g, e, e1p);
    let identity = solve_in_span(&basis, &one)
        .filter(|c| c.iter().all(|q| is_p_integral(q, p)))
        .ok_or_else(|| Error::InvariantViolated(format!("e e₁' is not in the order at {p}")))?;
    for (a, y) in basis.iter().enumerate() {
        if algebra::mul(g, &one, y) != *y || algebra::mul(g, y, &one) != *y {
            return Err(Error::InvariantViolated(format!(
                "identity fails on basis element {a}"
            )));
        }
    }
    let mut local = LocalOrder {
        prime: p,
        basis,
        representatives,
        relations: ech.relations().to_vec(),
        structure,
        identity,
        maximal: false,
    };
    local.maximal = aug
        .components
        .iter()
        .zip(&aug.multiplicities)
        .all(|(&i, &m)| component_discriminant_is_unit(dec, &local, i, m));
    Ok(local)
}

/// The projection of the order to component `i` is a Z_(p)-order in
/// `M_m(Q)` with unit reduced discriminant, and contains `e_i e₁'`.
fn component_discriminant_is_unit(dec: &Decomposition, o: &LocalOrder, i: usize, m: u64) -> bool {
    let g = &dec.group;
    let p = o.prime;
    let ei = &dec.components[i - 1].idempotent;
    let projected: Vec<AlgElem> = o.basis.iter().map(|y| algebra::mul(g, ei, y)).collect();
    let ech = echelon(&projected, p);
    let z = &ech.basis;
    // e_i e₁' must lie in the order for it to split as a product
    let one = o
        .basis
        .iter()
        .zip(&o.identity)
        .fold(algebra::zero(g), |acc, (y, c)| {
            algebra::add(&acc, &algebra::scale(y, c))
        });
    if !o.contains(&algebra::mul(g, ei, &one)) {
        return false;
    }
    // reduced trace: trace of left multiplication divided by m
    let trd = |x: &AlgElem| -> Option<Q> {
        let mut t = Q::zero();
        for (k, b) in z.iter().enumerate() {
            let c = solve_in_span(z, &algebra::mul(g, x, b))?;
            t += c[k].clone();
        }
        Some(t / Q::from_integer((m as i64).into()))
    };
    let mut gram = qmat::zeros(z.len(), z.len());
    for a in 0..z.len() {
        for b in 0..z.len() {
            match trd(&algebra::mul(g, &z[a], &z[b])) {
                Some(v) => gram[a][b] = v,
                None => return false,
            }
        }
    }
    val(&qmat::determinant(&gram), p) == Some(0)
}

/// The order `(e 𝔒 e₁')^{Γ'}` at each prime of `primes`, all of which must
/// be good for every component of the augmentation.
pub fn hecke_order(dec: &Decomposition, sub: &Subgroup, primes: &[u64]) -> Result<HeckeOrder> {
    let g = &dec.group;
    let aug = augmentation_component(dec, sub)?;
    for &p in primes {
        for &i in &aug.components {
            match dec.verdict(i, p) {
                Verdict::Good => {}
                Verdict::Bad => {
                    return Err(Error::BadPrime {
                        prime: p,
                        component: i,
                    })
                }
                Verdict::Unsupported => {
                    return Err(Error::UnsupportedComponent {
                        component: i,
                        reason: format!("maximality at {p} is not decidable here"),
                    })
                }
            }
        }
    }
    let identity = algebra::mul(g, &aug.idempotent, &aug.subgroup_idempotent);
    let mut rows: Vec<AlgElem> = (0..g.order())
        .map(|s| {
            algebra::mul(
                g,
                &algebra::mul(g, &aug.subgroup_idempotent, &algebra::basis(g, s)),
                &identity,
            )
        })
        .collect();
    let pivots = qmat::rref(&mut rows);
    rows.truncate(pivots.len());
    let rank = rows.len();
    if rank != aug.hecke_dimension(dec) {
        return Err(Error::InvariantViolated(format!(
            "Hecke algebra has dimension {rank}, characters predict {}",
            aug.hecke_dimension(dec)
        )));
    }
    let component_dims = aug
        .components
        .iter()
        .zip(&aug.multiplicities)
        .map(|(&i, &m)| (i, dec.components[i - 1].orbit.len() * (m * m) as usize))
        .collect();
    let local = primes
        .iter()
        .map(|&p| local_order(dec, &aug, p))
        .collect::<Result<Vec<_>>>()?;
    for l in &local {
        if l.basis.len() != rank {
            return Err(Error::InvariantViolated(format!(
                "local rank {} at {} differs from {rank}",
                l.basis.len(),
                l.prime
            )));
        }
    }
    Ok(HeckeOrder {
        augmentation: aug,
        rational_basis: rows,
        rank,
        component_dims,
        local,
        identity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::builtin::builtin;

    #[test]
    fn symmetric_pairs_have_rank_one() {
        for (name, sub) in [("S3", "S2"), ("S4", "S3")] {
            let g = builtin(name).unwrap();
            let dec = Decomposition::new(&g).unwrap();
            let h = g.named_subgroup(sub).unwrap().clone();
            let o = hecke_order(&dec, &h, &[5, 7]).unwrap();
            assert_eq!(o.rank, 1);
            assert!(o.augmentation.is_absolutely_irreducible(&dec));
            assert!(o.local.iter().all(|l| l.maximal));
            assert!(augmentation_support_holds(&dec, &o.augmentation));
        }
    }

    #[test]
    fn dihedral_pair() {
        let g = builtin("D4").unwrap();
        let dec = Decomposition::new(&g).unwrap();
        let h = g.named_subgroup("tau").unwrap().clone();
        let o = hecke_order(&dec, &h, &[3]).unwrap();
        assert_eq!(o.rank, 2);
        assert!(!o.augmentation.is_absolutely_irreducible(&dec));
        assert!(matches!(
            hecke_order(&dec, &h, &[2]),
            Err(Error::BadPrime { prime: 2, .. })
        ));
    }
}
