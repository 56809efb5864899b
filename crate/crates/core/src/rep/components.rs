//! Rational simple components of Q[Γ] and their central idempotents.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_traits::Zero;

use super::algebra::{self, AlgElem};
use super::character::{character_table, CharacterTable};
use super::good_primes::{good_primes, Verdict};
use super::registry::{self, IntegralRep};
use crate::arith::cyclotomic::Cyclo;
use crate::arith::Q;
use crate::error::{Error, Result};
use crate::group::Group;

#[derive(Debug, Clone)]
pub struct AlgebraComponent {
    /// 1-based; component 1 is the trivial one.
    pub index: usize,
    /// Character-table rows in the Galois orbit.
    pub orbit: Vec<usize>,
    /// Row of the chosen absolutely irreducible constituent (least in the orbit).
    pub constituent: usize,
    /// Orbit-sum character on classes.
    pub character: Vec<Q>,
    /// Degree of the constituent.
    pub h: u64,
    pub center_degree: usize,
    /// Q-dimension of the simple factor.
    pub dim: usize,
    pub idempotent: AlgElem,
    /// Schur index 1 asserted by the shipped registry.
    pub split: bool,
}

impl AlgebraComponent {
    /// Split with center Q: the components handled at primes dividing |Γ|.
    pub fn is_split_rational(&self) -> bool {
        self.split && self.center_degree == 1
    }
}

/// Q[Γ] together with its character table and simple components.
#[derive(Debug)]
pub struct Decomposition {
    pub group: Group,
    pub table: CharacterTable,
    pub components: Vec<AlgebraComponent>,
    pub registry_validated: bool,
    reps: Vec<OnceLock<std::result::Result<IntegralRep, Error>>>,
    verdicts: Mutex<HashMap<(usize, u64), Verdict>>,
}

impl Decomposition {
    pub fn new(g: &Group) -> Result<Decomposition> {
        Decomposition::with_cap(g, crate::limits::Limits::default().group_order)
    }

    pub fn with_cap(g: &Group, cap: usize) -> Result<Decomposition> {
        let table = character_table(g, cap)?;
        let mut components = rational_components(g, &table);
        let split = registry::lookup(g, &components);
        for c in components.iter_mut() {
            c.split = split;
        }
        let reps = (0..components.len()).map(|_| OnceLock::new()).collect();
        Ok(Decomposition {
            group: g.clone(),
            table,
            components,
            registry_validated: split,
            reps,
            verdicts: Mutex::new(HashMap::new()),
        })
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// Component by 1-based index.
    pub fn component(&self, i: usize) -> Result<&AlgebraComponent> {
        i.checked_sub(1)
            .and_then(|k| self.components.get(k))
            .ok_or_else(|| Error::UnsupportedComponent {
                component: i,
                reason: "no such component".into(),
            })
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    /// `φ_i(x)` for an element id.
    pub fn phi_value(&self, i: usize, x: usize) -> Cyclo {
        let c = &self.components[i - 1];
        self.table.characters[c.constituent][self.group.class_of(x)].clone()
    }

    /// `χ_i(x)` (orbit sum) for an element id.
    pub fn chi_value(&self, i: usize, x: usize) -> Q {
        self.components[i - 1].character[self.group.class_of(x)].clone()
    }

    /// Errors unless component `i` is split with center Q.
    pub fn require_supported(&self, i: usize) -> Result<&AlgebraComponent> {
        let c = self.component(i)?;
        if !c.split {
            return Err(Error::UnsupportedComponent {
                component: i,
                reason: format!("{} is not in the splitness registry", self.group.name()),
            });
        }
        if c.center_degree != 1 {
            return Err(Error::UnsupportedComponent {
                component: i,
                reason: format!("center has degree {}", c.center_degree),
            });
        }
        Ok(c)
    }

    /// Integral representation affording `φ_i`, built on first use.
    pub fn integral_rep(&self, i: usize) -> Result<&IntegralRep> {
        self.require_supported(i)?;
        self.reps[i - 1]
            .get_or_init(|| registry::build_integral_rep(self, i))
            .as_ref()
            .map_err(|e| e.clone())
    }

    /// Good-prime verdict for a single component, cached.
    pub fn verdict(&self, i: usize, p: u64) -> Verdict {
        if let Some(v) = self.verdicts.lock().expect("verdict cache").get(&(i, p)) {
            return *v;
        }
        let v = good_primes(self, &[i], &[p])[&p].verdict;
        self.verdicts
            .lock()
            .expect("verdict cache")
            .insert((i, p), v);
        v
    }

    /// Sum of the idempotents of the listed components.
    pub fn idempotent_sum(&self, indices: &[usize]) -> AlgElem {
        let mut e = algebra::zero(&self.group);
        for &i in indices {
            e = algebra::add(&e, &self.components[i - 1].idempotent);
        }
        e
    }

    /// Components whose idempotent `e_i` satisfies `e_i·x ≠ 0`.
    pub fn support_of(&self, x: &[Q]) -> Vec<usize> {
        self.components
            .iter()
            .filter(|c| !algebra::is_zero(&algebra::mul(&self.group, &c.idempotent, x)))
            .map(|c| c.index)
            .collect()
    }

    /// Exact check of orthogonality, completeness, centrality and dimensions.
    pub fn check(&self) -> Result<()> {
        let g = &self.group;
        let mut total = algebra::zero(g);
        let mut dims = 0;
        for a in &self.components {
            if !algebra::is_central(g, &a.idempotent) {
                return Err(Error::InvariantViolated(format!(
                    "e_{} is not central",
                    a.index
                )));
            }
            for b in &self.components {
                let prod = algebra::mul(g, &a.idempotent, &b.idempotent);
                let expect = if a.index == b.index {
                    a.idempotent.clone()
                } else {
                    algebra::zero(g)
                };
                if prod != expect {
                    return Err(Error::InvariantViolated(format!(
                        "e_{} e_{} is wrong",
                        a.index, b.index
                    )));
                }
            }
            total = algebra::add(&total, &a.idempotent);
            dims += a.dim;
        }
        if total != algebra::one(g) {
            return Err(Error::InvariantViolated(
                "idempotents do not sum to 1".into(),
            ));
        }
        if dims != g.order() {
            return Err(Error::InvariantViolated(
                "component dimensions do not sum to |Γ|".into(),
            ));
        }
        let e1 = algebra::subgroup_idempotent(g, &(0..g.order()).collect::<Vec<_>>());
        if self.components[0].idempotent != e1 {
            return Err(Error::InvariantViolated(
                "component 1 is not the trivial one".into(),
            ));
        }
        Ok(())
    }
}

pub fn rational_components(g: &Group, table: &CharacterTable) -> Vec<AlgebraComponent> {
    let n = g.order();
    table
        .galois_orbits()
        .into_iter()
        .enumerate()
        .map(|(k, orbit)| {
            let constituent = orbit[0];
            let r = table.num_classes();
            let character: Vec<Q> = (0..r)
                .map(|c| {
                    let mut s = table.field.zero();
                    for &row in &orbit {
                        s = s.add(&table.characters[row][c]);
                    }
                    s.as_rational().expect("orbit sums are rational")
                })
                .collect();
            let h = table.degrees[constituent];
            let coeff = Q::new((h as i64).into(), (n as i64).into());
            let idempotent: AlgElem = (0..n)
                .map(|x| {
                    let v = &character[g.class_of(g.inv(x))];
                    if v.is_zero() {
                        Q::zero()
                    } else {
                        &coeff * v
                    }
                })
                .collect();
            AlgebraComponent {
                index: k + 1,
                center_degree: orbit.len(),
                dim: orbit.len() * (h * h) as usize,
                orbit,
                constituent,
                character,
                h,
                idempotent,
                split: false,
            }
        })
        .collect()
}
