//! Lifting modules over the Hecke order back to the group ring, the rank
//! transfer `u ↦ v`, and the weight identity behind the non-Galois
//! distribution.

use num_traits::{One, ToPrimitive, Zero};

use super::functor::{invariants_functor, OModule};
use super::{augmentation_component, Augmentation, HeckeOrder};
use crate::arith::qmat::solve_in_span;
use crate::arith::{q_int, q_pow, Q};
use crate::dist::weight;
use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};
use crate::limits::Limits;
use crate::module::counting::BruteCounter;
use crate::module::{enumerate_types, GammaModule, ModuleType, TruncationSpec};
use crate::rep::algebra;
use crate::rep::{rank_u, Decomposition, RankSpec};

#[derive(Debug, Clone)]
pub struct MoritaLift {
    pub module_type: ModuleType,
    pub module: GammaModule,
    /// `|Aut_Γ(G)|`, by brute force.
    pub aut_module: u128,
    /// `|Aut_𝔬(H)|`, by brute force.
    pub aut_hecke: u128,
    /// Types whose invariants had the right order and were compared.
    pub candidates: usize,
}

/// `v_i = (h_i / m_i)·u_i` for every component of the augmentation.
pub fn rank_transfer(r: &RankSpec, aug: &Augmentation, dec: &Decomposition) -> Vec<(usize, Q)> {
    aug.components
        .iter()
        .zip(&aug.multiplicities)
        .map(|(&i, &m)| {
            let h = dec.components[i - 1].h as i64;
            (i, r.u(i) * Q::new(h.into(), (m as i64).into()))
        })
        .collect()
}

/// Truncation large enough to hold the lift of `h`: parts up to the
/// exponent of `h`, and `|G| ≤ |h|^{max h_i/m_i}`.
pub fn lift_truncation(h: &OModule, aug: &Augmentation, dec: &Decomposition) -> TruncationSpec {
    let p = h.prime;
    let exponent = h.orders.iter().copied().max().unwrap_or(1);
    let mut n = 0u32;
    while p.pow(n) < exponent {
        n += 1;
    }
    let ratio = aug
        .components
        .iter()
        .zip(&aug.multiplicities)
        .map(|(&i, &m)| dec.components[i - 1].h.div_ceil(m))
        .max()
        .unwrap_or(1);
    let bound = h.order().checked_pow(ratio as u32).unwrap_or(u128::MAX);
    TruncationSpec::new(vec![(p, n)], Some(bound))
}

/// The unique module over the augmentation component, among the types of
/// the truncation, whose `Γ'`-invariants are isomorphic to `h`.
pub fn morita_lift(
    h: &OModule,
    o: &HeckeOrder,
    dec: &Decomposition,
    trunc: &TruncationSpec,
    limits: &Limits,
) -> Result<MoritaLift> {
    let g = &dec.group;
    let sub = &o.augmentation.subgroup;
    let mut matches = Vec::new();
    let mut candidates = 0;
    for t in enumerate_types(dec, &o.augmentation.components, trunc)? {
        if t.entries().iter().any(|e| e.prime != h.prime) {
            continue;
        }
        let m = GammaModule::from_type(&t, dec)?;
        if m.fixed_count(g, sub)? != h.order() {
            continue;
        }
        candidates += 1;
        let inv = invariants_functor(&m, o, dec)?;
        if inv.isomorphic(h, limits)? {
            matches.push((t, m));
        }
    }
    let (module_type, module) = match matches.len() {
        0 => {
            return Err(Error::NotFound(format!(
                "no module in the truncation has invariants of order {}",
                h.order()
            )))
        }
        1 => matches.pop().expect("one match"),
        k => {
            let types: Vec<String> = matches.iter().map(|(t, _)| t.to_string()).collect();
            return Err(Error::NotUnique(format!("{k} lifts: {}", types.join(", "))));
        }
    };
    let aut_module = BruteCounter::new(g, *limits).aut(&module)?;
    let aut_hecke = h.aut_count(limits)?;
    if aut_module != aut_hecke {
        return Err(Error::InvariantViolated(format!(
            "|Aut(G)| = {aut_module} but |Aut_o(H)| = {aut_hecke} for G of type {module_type}"
        )));
    }
    Ok(MoritaLift {
        module_type,
        module,
        aut_module,
        aut_hecke,
        candidates,
    })
}

/// `|H|^v = Π_i |(e_i·1)H|^{v_i}`.
pub fn hecke_size_power(
    h: &OModule,
    o: &HeckeOrder,
    v: &[(usize, Q)],
    dec: &Decomposition,
) -> Result<Q> {
    if h.is_zero() {
        return Ok(Q::one());
    }
    let g = &dec.group;
    let local = o
        .at(h.prime)
        .ok_or_else(|| Error::Usage(format!("order was not built at {}", h.prime)))?;
    let mut exponent = Q::zero();
    for (i, vi) in v {
        let ei = algebra::mul(g, &dec.components[i - 1].idempotent, &o.identity);
        let coeffs = solve_in_span(&local.basis, &ei).ok_or_else(|| {
            Error::InvariantViolated(format!("e_{i} e e₁' is outside the Hecke algebra"))
        })?;
        let size = h.image_order(&coeffs)?;
        let mut k = 0i64;
        let mut s = size;
        while s > 1 {
            s /= h.prime as u128;
            k += 1;
        }
        exponent += vi * q_int(k);
    }
    if !exponent.is_integer() {
        return Err(Error::NonIntegralPower(format!(
            "|H|^v has exponent {exponent}"
        )));
    }
    let k = exponent
        .to_integer()
        .to_i64()
        .ok_or_else(|| Error::TooLarge("exponent overflow".into()))?;
    Ok(q_pow(h.prime, k))
}

/// One isomorphism class of modules over the order.
#[derive(Debug, Clone)]
pub struct NonGaloisRow {
    pub module: OModule,
    /// Types of the group-ring modules with these invariants.
    pub lifts: Vec<ModuleType>,
    /// `Σ_G 1/(|G|^u |Aut G|)` over those types.
    pub column_a: Q,
    /// `1/(|H|^v |Aut_𝔬 H|)`.
    pub column_b: Q,
    pub aut_hecke: u128,
}

impl NonGaloisRow {
    pub fn agrees(&self) -> bool {
        self.column_a == self.column_b
    }
}

/// Groups the weights of every type in the truncation by the isomorphism
/// class of its invariants, next to the weight computed on the order.
pub fn nongalois_table(
    o: &HeckeOrder,
    dec: &Decomposition,
    r: &RankSpec,
    trunc: &TruncationSpec,
    limits: &Limits,
) -> Result<Vec<NonGaloisRow>> {
    let v = rank_transfer(r, &o.augmentation, dec);
    let mut rows: Vec<NonGaloisRow> = Vec::new();
    for t in enumerate_types(dec, &o.augmentation.components, trunc)? {
        let m = GammaModule::from_type(&t, dec)?;
        let h = invariants_functor(&m, o, dec)?;
        let w = weight(&t, r, dec)?;
        let mut found = None;
        for (k, row) in rows.iter().enumerate() {
            if row.module.prime == h.prime
                && row.module.order() == h.order()
                && row.module.isomorphic(&h, limits)?
            {
                found = Some(k);
                break;
            }
        }
        match found {
            Some(k) => {
                rows[k].lifts.push(t);
                rows[k].column_a += w;
            }
            None => {
                let aut = h.aut_count(limits)?;
                let power = hecke_size_power(&h, o, &v, dec)?;
                let column_b = Q::one() / (power * Q::from_integer(aut.into()));
                rows.push(NonGaloisRow {
                    module: h,
                    lifts: vec![t],
                    column_a: w,
                    column_b,
                    aut_hecke: aut,
                });
            }
        }
    }
    Ok(rows)
}

/// Both sides of the comparison between `(Σ, Σ')` and `(Σ/Δ, Σ'/Δ)`.
#[derive(Debug, Clone)]
pub struct IndependenceReport {
    /// Quotient component matched to each augmentation component of `Σ`.
    pub matched: Vec<(usize, usize)>,
    pub v_sigma: Vec<(usize, Q)>,
    pub v_gamma: Vec<(usize, Q)>,
    pub dims_sigma: Vec<usize>,
    pub dims_gamma: Vec<usize>,
    pub holds: bool,
}

fn image_subgroup(gamma: &Group, image: &[usize], sub: &Subgroup) -> Subgroup {
    let mut elems: Vec<usize> = sub.elements.iter().map(|&x| image[x]).collect();
    elems.sort_unstable();
    elems.dedup();
    gamma
        .subgroup_from_elements(&elems)
        .expect("image of a subgroup")
}

/// Rank transfer and Hecke dimensions through `Σ` and through `Σ/Δ` agree
/// on components matched by inflation.
pub fn rank_independence_check(
    sigma: &Group,
    delta: &Subgroup,
    sigma_prime: &Subgroup,
    places: &[Subgroup],
) -> Result<IndependenceReport> {
    if !delta.elements.iter().all(|&x| sigma_prime.contains(x)) {
        return Err(Error::Usage("Σ' must contain Δ".into()));
    }
    let (gamma, proj) = sigma.quotient(delta)?;
    let dec_s = Decomposition::new(sigma)?;
    let dec_g = Decomposition::new(&gamma)?;
    let gamma_prime = image_subgroup(&gamma, &proj.image, sigma_prime);
    let places_g: Vec<Subgroup> = places
        .iter()
        .map(|v| image_subgroup(&gamma, &proj.image, v))
        .collect();
    let aug_s = augmentation_component(&dec_s, sigma_prime)?;
    let aug_g = augmentation_component(&dec_g, &gamma_prime)?;
    let v_sigma = rank_transfer(&rank_u(&dec_s, places), &aug_s, &dec_s);
    let v_gamma = rank_transfer(&rank_u(&dec_g, &places_g), &aug_g, &dec_g);
    // inflate each quotient component and find it among those of Σ
    let inflated = |j: usize| -> Vec<Q> {
        let c = &dec_g.components[j - 1];
        dec_s
            .table
            .class_reps
            .iter()
            .map(|&x| c.character[gamma.class_of(proj.image[x])].clone())
            .collect()
    };
    let mut matched = Vec::new();
    for &j in &aug_g.components {
        let chi = inflated(j);
        if let Some(c) = dec_s.components.iter().find(|c| c.character == chi) {
            matched.push((c.index, j));
        }
    }
    let dims = |aug: &Augmentation, dec: &Decomposition| -> Vec<usize> {
        aug.components
            .iter()
            .zip(&aug.multiplicities)
            .map(|(&i, &m)| dec.components[i - 1].orbit.len() * (m * m) as usize)
            .collect()
    };
    let dims_sigma = dims(&aug_s, &dec_s);
    let dims_gamma = dims(&aug_g, &dec_g);
    let lookup =
        |v: &[(usize, Q)], i: usize| v.iter().find(|(k, _)| *k == i).map(|(_, q)| q.clone());
    let all_matched =
        matched.len() == aug_s.components.len() && matched.len() == aug_g.components.len();
    let ranks_agree = matched
        .iter()
        .all(|&(i, j)| lookup(&v_sigma, i) == lookup(&v_gamma, j));
    let dims_agree = matched.iter().all(|&(i, j)| {
        let ks = aug_s.components.iter().position(|&c| c == i);
        let kg = aug_g.components.iter().position(|&c| c == j);
        ks.zip(kg)
            .is_some_and(|(a, b)| dims_sigma[a] == dims_gamma[b])
    });
    Ok(IndependenceReport {
        matched,
        v_sigma,
        v_gamma,
        dims_sigma,
        dims_gamma,
        holds: all_matched && ranks_agree && dims_agree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{q_frac, q_int};
    use crate::group::builtin::builtin;
    use crate::hecke::hecke_order;

    #[test]
    fn symmetric_lift_and_weights() {
        let g = builtin("S3").unwrap();
        let dec = Decomposition::new(&g).unwrap();
        let o = hecke_order(&dec, g.named_subgroup("S2").unwrap(), &[2]).unwrap();
        let limits = Limits::default();
        let h = OModule {
            prime: 2,
            orders: vec![2],
            action: vec![vec![vec![1]]],
        };
        let trunc = lift_truncation(&h, &o.augmentation, &dec);
        let lift = morita_lift(&h, &o, &dec, &trunc, &limits).unwrap();
        assert_eq!(lift.module.orders(), &[2, 2]);
        assert_eq!(lift.aut_module, 1);
        let r = RankSpec::from_vector(vec![q_int(0), q_int(1), q_int(1)]);
        assert_eq!(
            rank_transfer(&r, &o.augmentation, &dec),
            vec![(3, q_int(2))]
        );
        let rows = nongalois_table(
            &o,
            &dec,
            &r,
            &TruncationSpec::new(vec![(2, 1)], Some(16)),
            &limits,
        )
        .unwrap();
        assert!(rows.iter().all(NonGaloisRow::agrees));
        assert_eq!(rows[0].column_a, q_int(1));
        assert_eq!(rows[1].column_a, q_frac(1, 4));
    }

    #[test]
    fn independence_instances() {
        let v4 = builtin("V4").unwrap();
        let first = v4.named_subgroup("first").unwrap().clone();
        let rep = rank_independence_check(&v4, &first, &first, &[v4.trivial_subgroup()]).unwrap();
        assert!(rep.holds);
        let d4 = builtin("D4").unwrap();
        let center = d4.named_subgroup("center").unwrap().clone();
        let tc = d4.named_subgroup("tau_center").unwrap().clone();
        assert!(
            rank_independence_check(&d4, &center, &tc, &[d4.trivial_subgroup()])
                .unwrap()
                .holds
        );
        let triv = d4.trivial_subgroup();
        let tau = d4.named_subgroup("tau").unwrap().clone();
        assert!(
            rank_independence_check(&d4, &triv, &tau, &[tau.clone()])
                .unwrap()
                .holds
        );
    }
}
