//! Module types: one partition per (component, prime) pair.

use std::fmt;

use super::partition::Partition;
use crate::error::{Error, Result};
use crate::rep::{Decomposition, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeEntry {
    /// 1-based component index.
    pub component: usize,
    pub prime: u64,
    pub partition: Partition,
}

/// Isomorphism class of a finite module over the good-prime part of the
/// maximal order: entries sorted by (component, prime), no empty partitions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ModuleType {
    entries: Vec<TypeEntry>,
}

impl ModuleType {
    pub fn new(mut entries: Vec<TypeEntry>) -> Result<ModuleType> {
        entries.retain(|e| !e.partition.is_empty());
        entries.sort();
        if entries
            .windows(2)
            .any(|w| w[0].component == w[1].component && w[0].prime == w[1].prime)
        {
            return Err(Error::Parse(
                "a (component, prime) pair appears twice".into(),
            ));
        }
        Ok(ModuleType { entries })
    }

    pub fn zero() -> ModuleType {
        ModuleType::default()
    }

    pub fn single(component: usize, prime: u64, partition: Partition) -> ModuleType {
        ModuleType::new(vec![TypeEntry {
            component,
            prime,
            partition,
        }])
        .expect("single entry")
    }

    pub fn entries(&self) -> &[TypeEntry] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn partition(&self, component: usize, prime: u64) -> Option<&Partition> {
        self.entries
            .iter()
            .find(|e| e.component == component && e.prime == prime)
            .map(|e| &e.partition)
    }

    /// `(prime, exponent)` with `|e_i G| = p^{h_i |λ|}` summed per prime.
    pub fn order_factors(&self, dec: &Decomposition) -> Vec<(u64, u32)> {
        let mut out: Vec<(u64, u32)> = Vec::new();
        for e in &self.entries {
            let h = dec.components[e.component - 1].h as u32;
            let k = h * e.partition.size();
            match out.iter_mut().find(|(p, _)| *p == e.prime) {
                Some((_, x)) => *x += k,
                None => out.push((e.prime, k)),
            }
        }
        out.sort_unstable();
        out
    }

    /// `|G|`, or `None` on overflow.
    pub fn order(&self, dec: &Decomposition) -> Option<u128> {
        self.order_factors(dec)
            .iter()
            .try_fold(1u128, |acc, &(p, k)| {
                (p as u128).checked_pow(k).and_then(|x| acc.checked_mul(x))
            })
    }

    /// Direct sum of types supported on disjoint (component, prime) pairs.
    pub fn direct_sum(&self, other: &ModuleType) -> Result<ModuleType> {
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        ModuleType::new(entries)
    }

    /// The entries at one prime.
    pub fn at_prime(&self, p: u64) -> ModuleType {
        ModuleType {
            entries: self
                .entries
                .iter()
                .filter(|e| e.prime == p)
                .cloned()
                .collect(),
        }
    }

    /// The entries on the listed components.
    pub fn restrict_components(&self, comps: &[usize]) -> ModuleType {
        ModuleType {
            entries: self
                .entries
                .iter()
                .filter(|e| comps.contains(&e.component))
                .cloned()
                .collect(),
        }
    }

    /// Text form `i:p:(parts)` joined by ` + `; `0` for the zero type.
    pub fn parse(text: &str) -> Result<ModuleType> {
        let t = text.trim();
        if t == "0" || t.is_empty() {
            return Ok(ModuleType::zero());
        }
        let mut entries = Vec::new();
        for piece in t.split('+') {
            let mut it = piece.trim().splitn(3, ':');
            let (Some(c), Some(p), Some(l)) = (it.next(), it.next(), it.next()) else {
                return Err(Error::Parse(format!("bad type entry `{piece}`")));
            };
            let component = c
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad component in `{piece}`")))?;
            let prime = p
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad prime in `{piece}`")))?;
            entries.push(TypeEntry {
                component,
                prime,
                partition: Partition::parse(l)?,
            });
        }
        ModuleType::new(entries)
    }
}

impl fmt::Display for ModuleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("0");
        }
        let s: Vec<String> = self
            .entries
            .iter()
            .map(|e| format!("{}:{}:{}", e.component, e.prime, e.partition))
            .collect();
        f.write_str(&s.join(" + "))
    }
}

/// Per-prime truncation exponents `n_p` and an optional order bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncationSpec {
    pub exponents: Vec<(u64, u32)>,
    pub order_bound: Option<u128>,
}

impl TruncationSpec {
    pub fn new(exponents: Vec<(u64, u32)>, order_bound: Option<u128>) -> TruncationSpec {
        TruncationSpec {
            exponents,
            order_bound,
        }
    }

    pub fn empty() -> TruncationSpec {
        TruncationSpec {
            exponents: Vec::new(),
            order_bound: None,
        }
    }

    pub fn exponent(&self, p: u64) -> u32 {
        self.exponents
            .iter()
            .find(|(q, _)| *q == p)
            .map_or(0, |(_, n)| *n)
    }

    pub fn primes(&self) -> Vec<u64> {
        self.exponents
            .iter()
            .filter(|(_, n)| *n > 0)
            .map(|(p, _)| *p)
            .collect()
    }

    /// True when every entry's largest part is within `n_p` and the order
    /// within the bound.
    pub fn contains(&self, t: &ModuleType, dec: &Decomposition) -> bool {
        t.entries()
            .iter()
            .all(|e| e.partition.largest() <= self.exponent(e.prime))
            && match (self.order_bound, t.order(dec)) {
                (Some(b), Some(o)) => o <= b,
                (Some(_), None) => false,
                (None, _) => true,
            }
    }
}

/// All types over the listed components whose partitions have parts at most
/// `n_p` and whose order is within the bound, in sorted order.
pub fn enumerate_types(
    dec: &Decomposition,
    components: &[usize],
    trunc: &TruncationSpec,
) -> Result<Vec<ModuleType>> {
    let mut pair_options: Vec<Vec<Option<TypeEntry>>> = Vec::new();
    for &(p, n) in &trunc.exponents {
        if n == 0 {
            continue;
        }
        let bound = trunc
            .order_bound
            .ok_or_else(|| Error::Unbounded(format!("exponent {n} at {p} needs an order bound")))?;
        for &i in components {
            let c = dec.component(i)?;
            if dec.verdict(i, p) != Verdict::Good {
                return Err(Error::BadPrime {
                    prime: p,
                    component: i,
                });
            }
            let h = c.h as u32;
            let mut max_size = 0u32;
            while (p as u128)
                .checked_pow(h * (max_size + 1))
                .is_some_and(|x| x <= bound)
            {
                max_size += 1;
            }
            let mut opts = vec![None];
            for part in Partition::enumerate(n, max_size)
                .into_iter()
                .filter(|l| !l.is_empty())
            {
                opts.push(Some(TypeEntry {
                    component: i,
                    prime: p,
                    partition: part,
                }));
            }
            pair_options.push(opts);
        }
    }
    let mut out = Vec::new();
    let mut cur: Vec<TypeEntry> = Vec::new();
    fn rec(
        k: usize,
        options: &[Vec<Option<TypeEntry>>],
        cur: &mut Vec<TypeEntry>,
        order: u128,
        bound: Option<u128>,
        dec: &Decomposition,
        out: &mut Vec<ModuleType>,
    ) {
        if k == options.len() {
            out.push(ModuleType::new(cur.clone()).expect("distinct pairs"));
            return;
        }
        for opt in &options[k] {
            match opt {
                None => rec(k + 1, options, cur, order, bound, dec, out),
                Some(e) => {
                    let h = dec.components[e.component - 1].h as u32;
                    let Some(o) = (e.prime as u128)
                        .checked_pow(h * e.partition.size())
                        .and_then(|x| x.checked_mul(order))
                    else {
                        continue;
                    };
                    if bound.is_some_and(|b| o > b) {
                        continue;
                    }
                    cur.push(e.clone());
                    rec(k + 1, options, cur, o, bound, dec, out);
                    cur.pop();
                }
            }
        }
    }
    rec(
        0,
        &pair_options,
        &mut cur,
        1,
        trunc.order_bound,
        dec,
        &mut out,
    );
    out.sort();
    Ok(out)
}
