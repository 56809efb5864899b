//! Good primes for sums of split components with center Q.
//!
//! For such a component `A = eQ[Γ] ≅ M_h(Q)` the reduced trace of `e·x` is
//! `φ(x)`, so the trace form on the spanning set `{e·g}` is `T[g][g'] = φ(gg')`.
//! A prime is good when `e` is p-integral and the lattice `eZ_(p)[Γ]` has a
//! Gram determinant of valuation zero.

use std::collections::BTreeMap;

use super::components::Decomposition;
use crate::arith::plocal::echelon;
use crate::arith::qmat::{determinant, QMat};

use crate::arith::{is_p_integral, val, Q};
use num_traits::{One, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Verdict {
    Good,
    Bad,
    Unsupported,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Good => "good",
            Verdict::Bad => "bad",
            Verdict::Unsupported => "unsupported",
        })
    }
}

/// Verdict for one prime, with the outcome of each test when it applies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeReport {
    pub prime: u64,
    pub verdict: Verdict,
    pub denominator: Option<bool>,
    pub gram: Option<bool>,
    pub closed: Option<bool>,
}

impl PrimeReport {
    /// True unless two applicable tests disagree.
    pub fn consistent(&self) -> bool {
        let both = match (self.denominator, self.gram) {
            (Some(d), Some(g)) => Some(d && g),
            _ => None,
        };
        match (both, self.closed) {
            (Some(a), Some(b)) => a == b,
            _ => true,
        }
    }
}

/// Trace-form data for one component: the chosen index set and `det T_JJ`.
struct TraceForm {
    rows: QMat,
    det_jj: Q,
}

fn trace_form(dec: &Decomposition, i: usize) -> TraceForm {
    let g = &dec.group;
    let n = g.order();
    let full = |x: usize| -> Vec<Q> { (0..n).map(|y| dec.chi_value(i, g.mul(x, y))).collect() };
    let target = (dec.components[i - 1].h * dec.components[i - 1].h) as usize;
    let mut chosen: Vec<usize> = Vec::new();
    // reduced rows with their pivot columns; each has zeros at earlier pivots
    let mut reduced: Vec<(usize, Vec<Q>)> = Vec::new();
    for x in 0..n {
        if chosen.len() == target {
            break;
        }
        let mut row = full(x);
        for (pc, b) in &reduced {
            if !row[*pc].is_zero() {
                let f = row[*pc].clone();
                for (a, bb) in row.iter_mut().zip(b) {
                    if !bb.is_zero() {
                        *a -= &f * bb;
                    }
                }
            }
        }
        if let Some(pc) = row.iter().position(|q| !q.is_zero()) {
            let inv = Q::one() / &row[pc];
            let row: Vec<Q> = row.iter().map(|q| q * &inv).collect();
            reduced.push((pc, row));
            chosen.push(x);
        }
    }
    let rows: QMat = (0..n)
        .map(|x| {
            chosen
                .iter()
                .map(|&y| dec.chi_value(i, g.mul(x, y)))
                .collect()
        })
        .collect();
    let jj: QMat = chosen.iter().map(|&x| rows[x].clone()).collect();
    TraceForm {
        det_jj: determinant(&jj),
        rows,
    }
}

fn gram_valuation(form: &TraceForm, p: u64) -> i64 {
    let basis = echelon(&form.rows, p).basis;
    let det_phi = determinant(&basis);
    2 * val(&det_phi, p).expect("full-rank lattice")
        - val(&form.det_jj, p).expect("nonsingular trace form")
}

/// Good-prime verdicts for the sum of the listed components (1-based).
pub fn good_primes(
    dec: &Decomposition,
    components: &[usize],
    primes: &[u64],
) -> BTreeMap<u64, PrimeReport> {
    let n = dec.order() as u64;
    let forms: BTreeMap<usize, TraceForm> = components
        .iter()
        .filter(|&&i| dec.components[i - 1].is_split_rational())
        .map(|&i| (i, trace_form(dec, i)))
        .collect();
    primes
        .iter()
        .map(|&p| {
            let mut verdict = Verdict::Good;
            let mut denominator = Some(true);
            let mut gram = Some(true);
            let mut closed = Some(true);
            for &i in components {
                let c = &dec.components[i - 1];
                if !c.is_split_rational() {
                    denominator = None;
                    gram = None;
                    closed = None;
                    if n % p == 0 {
                        verdict = verdict.max(Verdict::Unsupported);
                    }
                    continue;
                }
                let d_ok = c.idempotent.iter().all(|q| is_p_integral(q, p));
                let g_ok = gram_valuation(&forms[&i], p) == 0;
                let c_ok = (n / c.h) % p != 0;
                denominator = denominator.map(|x| x && d_ok);
                gram = gram.map(|x| x && g_ok);
                closed = closed.map(|x| x && c_ok);
                if !(d_ok && g_ok) {
                    verdict = verdict.max(Verdict::Bad);
                }
            }
            (
                p,
                PrimeReport {
                    prime: p,
                    verdict,
                    denominator,
                    gram,
                    closed,
                },
            )
        })
        .collect()
}

/// Valuation at `p` of the Gram determinant of `e_i Z_(p)[Γ]`.
pub fn gram_determinant_valuation(dec: &Decomposition, i: usize, p: u64) -> i64 {
    gram_valuation(&trace_form(dec, i), p)
}

pub fn is_good(dec: &Decomposition, components: &[usize], p: u64) -> bool {
    good_primes(dec, components, &[p])[&p].verdict == Verdict::Good
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::builtin::builtin;

    #[test]
    fn s3_standard() {
        let dec = Decomposition::new(&builtin("S3").unwrap()).unwrap();
        let r = good_primes(&dec, &[3], &[2, 3, 5]);
        assert_eq!(r[&2].verdict, Verdict::Good);
        assert_eq!(r[&3].verdict, Verdict::Bad);
        assert_eq!(r[&5].verdict, Verdict::Good);
        assert!(r.values().all(|x| x.consistent()));
    }

    #[test]
    fn center_not_q_is_unsupported_at_divisors() {
        let dec = Decomposition::new(&builtin("C3").unwrap()).unwrap();
        let r = good_primes(&dec, &[2], &[3, 7]);
        assert_eq!(r[&3].verdict, Verdict::Unsupported);
        assert_eq!(r[&7].verdict, Verdict::Good);
    }
}
