//! Rank vectors `u_i = ⟨χ_K, φ_i⟩ / h_i` from decomposition subgroups at the
//! infinite places, with `χ_K = -1 + Σ_v Ind_{Γ_v}^Γ 1`.

use super::components::Decomposition;
use crate::arith::Q;
use crate::group::Subgroup;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankSpec {
    /// Decomposition subgroups, one per infinite place; empty when the rank
    /// vector was given directly.
    pub places: Vec<Subgroup>,
    /// `χ_K` on classes, when places are known.
    pub chi_k: Option<Vec<Q>>,
    /// One entry per component; entry 0 is `⟨χ_K, 1⟩`.
    pub u: Vec<Q>,
}

impl RankSpec {
    /// Rank vector given directly, one entry per component.
    pub fn from_vector(u: Vec<Q>) -> RankSpec {
        RankSpec {
            places: Vec::new(),
            chi_k: None,
            u,
        }
    }

    /// `u_i` for a 1-based component index.
    pub fn u(&self, i: usize) -> &Q {
        &self.u[i - 1]
    }

    pub fn has_places(&self) -> bool {
        self.chi_k.is_some()
    }
}

/// `Ind_H^Γ 1` on classes: `|C_Γ(g)|·|C ∩ H| / |H|`.
pub fn induced_trivial(dec: &Decomposition, h: &Subgroup) -> Vec<Q> {
    let g = &dec.group;
    let n = g.order() as i64;
    let mut counts = vec![0i64; dec.table.num_classes()];
    for &x in &h.elements {
        counts[g.class_of(x)] += 1;
    }
    counts
        .iter()
        .zip(&dec.table.class_sizes)
        .map(|(&c, &size)| Q::new((n / size as i64 * c).into(), (h.order() as i64).into()))
        .collect()
}

pub fn rank_u(dec: &Decomposition, places: &[Subgroup]) -> RankSpec {
    let r = dec.table.num_classes();
    let mut chi = vec![Q::from_integer((-1).into()); r];
    for v in places {
        for (a, b) in chi.iter_mut().zip(induced_trivial(dec, v)) {
            *a += b;
        }
    }
    let u = dec
        .components
        .iter()
        .map(|c| {
            let ip = dec.table.inner_rational(&chi, &c.character);
            ip / Q::from_integer(((c.h as usize * c.orbit.len()) as i64).into())
        })
        .collect();
    RankSpec {
        places: places.to_vec(),
        chi_k: Some(chi),
        u,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q_int;
    use crate::group::builtin::builtin;

    #[test]
    fn quadratic_fields() {
        let g = builtin("C2").unwrap();
        let dec = Decomposition::new(&g).unwrap();
        let imag = rank_u(&dec, &[g.whole()]);
        assert_eq!(imag.u(2), &q_int(0));
        let real = rank_u(&dec, &[g.trivial_subgroup()]);
        assert_eq!(real.u(2), &q_int(1));
        assert_eq!(real.u(1), &q_int(0));
    }
}
