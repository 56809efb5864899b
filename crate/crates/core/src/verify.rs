//! Verification suites run by `galmod verify` and the acceptance tests. Each
//! suite returns a verdict and a short report; errors count as failures.

use std::time::{Duration, Instant};

use num_traits::{One, Signed, Zero};

use crate::arith::{fmt_q, is_prime, q_frac, q_int, render_decimal, Q};
use crate::dist::table::tail_band;
use crate::dist::{
    moment, sample, sample_cokernel, truncated_table, CokernelSamplerConfig, DistributionTable,
};
use crate::error::{Error, Result};
use crate::group::builtin::{builtin, names};
use crate::group::{Group, Subgroup};
use crate::hecke::{
    augmentation_component, augmentation_support_holds, hecke_order, hecke_size_power,
    invariants_functor, lift_truncation, morita_lift, nongalois_table, omodule_from_generator,
    rank_independence_check, rank_transfer, HeckeOrder, OModule,
};
use crate::limits::Limits;
use crate::module::counting::{count_maps, BruteCounter, MapKind, Method, Operand};
use crate::module::structures::bruteforce_module_structures;
use crate::module::{enumerate_types, GammaModule, ModuleType, Partition, TruncationSpec};
use crate::rep::algebra::{self, AlgElem};
use crate::rep::{good_primes, rank_u, Decomposition, RankSpec, Verdict};
use crate::triples::{aut_count, build_class_triple, verify_uniqueness, AutMethod};

#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub criterion: usize,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

pub const SUITES: [(usize, &str); 11] = [
    (1, "group-algebra decomposition of D4"),
    (2, "good primes"),
    (3, "Hecke orders"),
    (4, "counting formulas against brute force"),
    (5, "moments and tail bands"),
    (6, "moment inversion"),
    (7, "class triples"),
    (8, "Morita lifts and non-Galois weights"),
    (9, "rank vectors and rank transfer"),
    (10, "cohomological triviality"),
    (11, "samplers"),
];

/// Runs one suite by criterion number.
pub fn run_suite(criterion: usize) -> SuiteOutcome {
    let title = SUITES
        .iter()
        .find(|(k, _)| *k == criterion)
        .map_or("unknown suite", |(_, t)| *t);
    let start = Instant::now();
    let result = match criterion {
        1 => decomposition_suite(),
        2 => good_prime_suite(),
        3 => hecke_suite(),
        4 => counting_suite(),
        5 => moment_suite(),
        6 => inversion_suite(),
        7 => triple_suite(),
        8 => morita_suite(),
        9 => rank_suite(),
        10 => cohomology_suite(),
        11 => sampler_suite(),
        _ => Err(Error::Usage(format!("no suite {criterion}"))),
    };
    let elapsed = start.elapsed();
    let (passed, detail) = match result {
        Ok(r) => r,
        Err(e) => (false, format!("{}: {e}", e.code())),
    };
    SuiteOutcome {
        criterion,
        title,
        passed,
        detail,
        elapsed,
    }
}

pub fn run_all() -> Vec<SuiteOutcome> {
    SUITES.iter().map(|&(k, _)| run_suite(k)).collect()
}

/// Collects failures; a suite passes when the list stays empty.
#[derive(Default)]
struct Tally {
    checks: usize,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn finish(self, summary: String) -> Result<(bool, String)> {
        if self.failures.is_empty() {
            Ok((true, format!("{} checks; {summary}", self.checks)))
        } else {
            let shown: Vec<&str> = self.failures.iter().take(5).map(String::as_str).collect();
            Ok((
                false,
                format!(
                    "{} of {} checks failed: {}",
                    self.failures.len(),
                    self.checks,
                    shown.join("; ")
                ),
            ))
        }
    }
}

fn group_with_dec(name: &str) -> Result<(Group, Decomposition)> {
    let g = builtin(name)?;
    let dec = Decomposition::new(&g)?;
    Ok((g, dec))
}

fn named(g: &Group, name: &str) -> Result<Subgroup> {
    g.named_subgroup(name)
        .cloned()
        .ok_or_else(|| Error::NotFound(format!("subgroup {name} of {}", g.name())))
}

fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&p| is_prime(p)).collect()
}

/// Component of the given degree inside the augmentation, if unique.
fn component_of_degree(dec: &Decomposition, comps: &[usize], h: u64) -> Result<usize> {
    let found: Vec<usize> = comps
        .iter()
        .copied()
        .filter(|&i| dec.components[i - 1].h == h)
        .collect();
    match found.as_slice() {
        [i] => Ok(*i),
        _ => Err(Error::NotFound(format!(
            "no unique component of degree {h} among {comps:?}"
        ))),
    }
}

/// `Σ c_x x` with coefficients given on words in the named elements.
fn combination(g: &Group, terms: &[(&[&str], Q)]) -> Result<AlgElem> {
    let mut out = algebra::zero(g);
    for (word, c) in terms {
        let mut x = g.identity();
        for letter in *word {
            x = g.mul(x, g.parse_element(letter)?);
        }
        out[x] += c.clone();
    }
    Ok(out)
}

fn decomposition_suite() -> Result<(bool, String)> {
    let start = Instant::now();
    let (g, dec) = group_with_dec("D4")?;
    dec.check()?;
    let mut t = Tally::default();
    let dims: Vec<usize> = dec.components.iter().map(|c| c.dim).collect();
    let mut sorted = dims.clone();
    sorted.sort_unstable();
    t.check(sorted == [1, 1, 1, 1, 4], || {
        format!("component dimensions {dims:?}")
    });
    let s = "(1 2 3 4)";
    let r = "(1 3)";
    let eighth = q_frac(1, 8);
    let neg = -eighth.clone();
    let linear = combination(
        &g,
        &[
            (&[], eighth.clone()),
            (&[s, s], eighth.clone()),
            (&[s], neg.clone()),
            (&[s, s, s], neg.clone()),
            (&[r], eighth.clone()),
            (&[s, s, r], eighth.clone()),
            (&[s, r], neg.clone()),
            (&[s, s, s, r], neg),
        ],
    )?;
    let degree_two = combination(&g, &[(&[], q_frac(1, 2)), (&[s, s], q_frac(-1, 2))])?;
    let lin = dec.components.iter().find(|c| c.idempotent == linear);
    let two = dec.components.iter().find(|c| c.idempotent == degree_two);
    t.check(lin.is_some_and(|c| c.h == 1), || {
        "the linear idempotent is missing".into()
    });
    t.check(two.is_some_and(|c| c.h == 2), || {
        "the degree-two idempotent is missing".into()
    });
    let elapsed = start.elapsed();
    t.check(elapsed < Duration::from_secs(1), || {
        format!("took {elapsed:?}")
    });
    t.finish(format!("dims {dims:?} in {elapsed:.2?}"))
}

/// Pairs with their bad primes up to 31.
const GOOD_PRIME_CASES: [(&str, &str, &[u64]); 5] = [
    ("D4", "tau", &[2]),
    ("S3", "S2", &[3]),
    ("S4", "S3", &[2]),
    ("S5", "S4", &[2, 3, 5]),
    ("A5", "S3_twisted", &[2, 3, 5]),
];

fn good_prime_suite() -> Result<(bool, String)> {
    let start = Instant::now();
    let primes = primes_up_to(31);
    let mut t = Tally::default();
    for (gname, sname, bad) in GOOD_PRIME_CASES {
        let (g, dec) = group_with_dec(gname)?;
        let aug = augmentation_component(&dec, &named(&g, sname)?)?;
        let reports = good_primes(&dec, &aug.components, &primes);
        let found: Vec<u64> = reports
            .values()
            .filter(|r| r.verdict != Verdict::Good)
            .map(|r| r.prime)
            .collect();
        t.check(found == bad, || {
            format!("({gname}, {sname}) bad at {found:?}, expected {bad:?}")
        });
    }
    let mut pairs = 0;
    for gname in names() {
        let (g, dec) = group_with_dec(gname)?;
        for (sname, sub) in g.subgroups() {
            let aug = augmentation_component(&dec, sub)?;
            for r in good_primes(&dec, &aug.components, &primes).values() {
                t.check(r.consistent(), || {
                    format!("({gname}, {sname}) tests disagree at {}", r.prime)
                });
            }
            pairs += 1;
        }
    }
    let elapsed = start.elapsed();
    t.check(elapsed < Duration::from_secs(10), || {
        format!("took {elapsed:?}")
    });
    t.finish(format!(
        "{pairs} built-in pairs, primes up to 31, {elapsed:.2?}"
    ))
}

/// `t = σ²·e e₁'` in the order of `(D4, ⟨τ⟩)`.
pub fn dihedral_involution(g: &Group, o: &HeckeOrder) -> Result<AlgElem> {
    let s = g.parse_element("(1 2 3 4)")?;
    Ok(algebra::left_mul_elem(g, g.mul(s, s), &o.identity))
}

fn hecke_suite() -> Result<(bool, String)> {
    let mut t = Tally::default();
    for (gname, sname, primes) in [
        ("S3", "S2", &[2u64, 5][..]),
        ("S4", "S3", &[3, 5]),
        ("S5", "S4", &[7]),
    ] {
        let (g, dec) = group_with_dec(gname)?;
        let o = hecke_order(&dec, &named(&g, sname)?, primes)?;
        t.check(o.rank == 1, || {
            format!("({gname}, {sname}) has rank {}", o.rank)
        });
        t.check(o.local.iter().all(|l| l.maximal), || {
            format!("({gname}, {sname}) not maximal")
        });
    }
    // the dihedral order is Z_S[t]/(t² − 1)
    let (g, dec) = group_with_dec("D4")?;
    let o = hecke_order(&dec, &named(&g, "tau")?, &[3, 5])?;
    t.check(o.rank == 2, || format!("(D4, tau) has rank {}", o.rank));
    let inv = dihedral_involution(&g, &o)?;
    let lin = component_of_degree(&dec, &o.augmentation.components, 1)?;
    let two = component_of_degree(&dec, &o.augmentation.components, 2)?;
    let half = q_frac(1, 2);
    let plus = algebra::scale(&algebra::add(&o.identity, &inv), &half);
    let minus = algebra::scale(&algebra::sub(&o.identity, &inv), &half);
    t.check(algebra::mul(&g, &inv, &inv) == o.identity, || {
        "t² ≠ 1".into()
    });
    t.check(
        algebra::mul(&g, &dec.components[lin - 1].idempotent, &o.identity) == plus,
        || "e_φ e₁' ≠ (1+t)/2".into(),
    );
    t.check(
        algebra::mul(&g, &dec.components[two - 1].idempotent, &o.identity) == minus,
        || "e_χ e₁' ≠ (1−t)/2".into(),
    );
    for l in &o.local {
        t.check(l.is_basis(&[o.identity.clone(), inv.clone()]), || {
            format!("1, t is not a basis at {}", l.prime)
        });
    }
    let (a5, dec5) = group_with_dec("A5")?;
    let o5 = hecke_order(&dec5, &named(&a5, "S3_twisted")?, &[7])?;
    t.check(o5.rank == 2, || {
        format!("(A5, S3_twisted) has rank {}", o5.rank)
    });
    // rank one exactly when the augmentation is absolutely irreducible
    let mut pairs = 0;
    for gname in names() {
        let (g, dec) = group_with_dec(gname)?;
        let p = (2..)
            .find(|&p| is_prime(p) && dec.order() as u64 % p != 0)
            .expect("a prime");
        for (sname, sub) in g.subgroups() {
            let o = hecke_order(&dec, sub, &[p])?;
            let irreducible = o.augmentation.is_absolutely_irreducible(&dec);
            t.check((o.rank == 1) == irreducible, || {
                format!(
                    "({gname}, {sname}) rank {} vs irreducible {irreducible}",
                    o.rank
                )
            });
            t.check(augmentation_support_holds(&dec, &o.augmentation), || {
                format!("({gname}, {sname}) support")
            });
            pairs += 1;
        }
    }
    t.finish(format!("{pairs} built-in pairs"))
}

/// A component, a prime and the largest partition size in one counting grid.
struct CountingGrid {
    group: &'static str,
    /// Degree of the component, to locate it.
    degree: u64,
    /// Pick the trivial component instead of a nontrivial one.
    trivial: bool,
    prime: u64,
    max_size: u32,
}

const COUNTING_GRIDS: [CountingGrid; 4] = [
    CountingGrid {
        group: "C2",
        degree: 1,
        trivial: false,
        prime: 3,
        max_size: 4,
    },
    CountingGrid {
        group: "C3",
        degree: 1,
        trivial: true,
        prime: 2,
        max_size: 6,
    },
    CountingGrid {
        group: "S3",
        degree: 2,
        trivial: false,
        prime: 2,
        max_size: 3,
    },
    CountingGrid {
        group: "D4",
        degree: 2,
        trivial: false,
        prime: 3,
        max_size: 2,
    },
];

/// Formula and brute force for Hom, Sur and Aut on every pair of partitions
/// in the grid. Returns (pairs, mismatches).
pub fn counting_grid(
    group: &str,
    component: usize,
    prime: u64,
    max_size: u32,
    limits: &Limits,
) -> Result<(usize, Vec<String>)> {
    let (_, dec) = group_with_dec(group)?;
    let parts = Partition::enumerate(max_size, max_size);
    let types: Vec<ModuleType> = parts
        .iter()
        .map(|l| ModuleType::single(component, prime, l.clone()))
        .collect();
    let ops: Vec<Operand> = types
        .iter()
        .map(|t| {
            GammaModule::from_type(t, &dec).map(|mut m| {
                m.type_cache = Some(t.clone());
                Operand::Module(m)
            })
        })
        .collect::<Result<_>>()?;
    let mut bad = Vec::new();
    let mut pairs = 0;
    for (a, src) in ops.iter().enumerate() {
        for (b, dst) in ops.iter().enumerate() {
            for kind in [MapKind::Hom, MapKind::Sur] {
                let f = count_maps(kind, src, dst, Method::Formula, &dec, limits)?;
                let x = count_maps(kind, src, dst, Method::BruteForce, &dec, limits)?;
                if f != x {
                    bad.push(format!(
                        "{group} {kind:?}({} → {}): formula {f}, search {x}",
                        types[a], types[b]
                    ));
                }
            }
            pairs += 1;
        }
        let f = count_maps(MapKind::Aut, src, src, Method::Formula, &dec, limits)?;
        let x = count_maps(MapKind::Aut, src, src, Method::BruteForce, &dec, limits)?;
        if f != x {
            bad.push(format!(
                "{group} Aut({}): formula {f}, search {x}",
                types[a]
            ));
        }
    }
    Ok((pairs, bad))
}

fn counting_suite() -> Result<(bool, String)> {
    let start = Instant::now();
    let limits = Limits::default();
    let mut t = Tally::default();
    let mut total = 0;
    for grid in &COUNTING_GRIDS {
        let (_, dec) = group_with_dec(grid.group)?;
        let comp = if grid.trivial {
            1
        } else {
            let nontrivial: Vec<usize> = (2..=dec.num_components()).collect();
            dec.components
                .iter()
                .skip(1)
                .find(|c| c.h == grid.degree && dec.verdict(c.index, grid.prime) == Verdict::Good)
                .map(|c| c.index)
                .ok_or_else(|| {
                    Error::NotFound(format!(
                        "good component of degree {} in {nontrivial:?}",
                        grid.degree
                    ))
                })?
        };
        let (pairs, bad) = counting_grid(grid.group, comp, grid.prime, grid.max_size, &limits)?;
        total += pairs;
        t.check(bad.is_empty(), || bad.join("; "));
    }
    let (_, dec) = group_with_dec("C2")?;
    let ty = Operand::Type(ModuleType::single(2, 3, Partition::new(vec![2, 1])));
    for method in [Method::Formula, Method::BruteForce] {
        let n = count_maps(MapKind::Aut, &ty, &ty, method, &dec, &limits)?;
        t.check(n == 108, || {
            format!("|Aut| of type (2,1) at 3 is {n} by {method:?}")
        });
    }
    let elapsed = start.elapsed();
    t.check(elapsed < Duration::from_secs(60), || {
        format!("took {elapsed:?}")
    });
    t.finish(format!("{total} partition pairs in {elapsed:.2?}"))
}

/// The real quadratic table at 3: sign component, `u = 1`, parts at most
/// `n`, order at most `3^6`.
pub fn quadratic_table(n: u32) -> Result<(Decomposition, DistributionTable)> {
    let (g, dec) = group_with_dec("C2")?;
    let r = rank_u(&dec, &[g.trivial_subgroup()]);
    let table = truncated_table(
        &dec,
        &[2],
        &r,
        &TruncationSpec::new(vec![(3, n)], Some(729)),
    )?;
    Ok((dec, table))
}

/// `(level, truncated moment, gap, band)` for `H = Z/3` on levels `1..=levels`.
pub fn quadratic_moment_bands(levels: u32) -> Result<Vec<(u32, Q, Q, Q)>> {
    let h = ModuleType::single(2, 3, Partition::new(vec![1]));
    let mut out = Vec::new();
    let (dec, mut table) = quadratic_table(1)?;
    for n in 1..=levels {
        let (_, next) = quadratic_table(n + 1)?;
        let m = moment(&table, &h, &dec)?;
        let band = tail_band(3, &table.normalizer, &next.normalizer);
        out.push((n, m.truncated, m.gap, band));
        table = next;
    }
    Ok(out)
}

/// Both routes to the dihedral moments at level 2, with the band and the
/// closed value `1/|H|^v`, for `t = +1` and `t = −1`.
pub struct DihedralMoments {
    pub sign: i64,
    pub closed: Q,
    pub group_side: Q,
    pub hecke_side: Q,
    pub band: Q,
}

pub fn dihedral_moments(limits: &Limits) -> Result<Vec<DihedralMoments>> {
    let (g, dec) = group_with_dec("D4")?;
    let o = hecke_order(&dec, &named(&g, "tau")?, &[3])?;
    let r = rank_u(&dec, &[g.trivial_subgroup()]);
    let comps = o.augmentation.components.clone();
    let small = TruncationSpec::new(vec![(3, 2)], Some(81));
    let large = TruncationSpec::new(vec![(3, 3)], Some(729));
    let table = truncated_table(&dec, &comps, &r, &small)?;
    let next = truncated_table(&dec, &comps, &r, &large)?;
    let rows = nongalois_table(&o, &dec, &r, &small, limits)?;
    let total_b: Q = rows.iter().map(|row| row.column_b.clone()).sum();
    let v = rank_transfer(&r, &o.augmentation, &dec);
    let inv = dihedral_involution(&g, &o)?;
    let counter = BruteCounter::for_operators(*limits);
    let mut out = Vec::new();
    for sign in [1i64, -1] {
        let h = omodule_from_generator(&o, 3, Some((&inv, &vec![vec![sign]])), vec![3])?;
        let closed = Q::one() / hecke_size_power(&h, &o, &v, &dec)?;
        let lift = morita_lift(
            &h,
            &o,
            &dec,
            &lift_truncation(&h, &o.augmentation, &dec),
            limits,
        )?;
        let group_side = moment(&table, &lift.module_type, &dec)?.truncated;
        let target = h.as_operator_module()?;
        let mut hecke_side = Q::zero();
        for row in &rows {
            let s = counter.sur(&row.module.as_operator_module()?, &target)?;
            hecke_side += row.column_b.clone() / total_b.clone() * Q::from_integer(s.into());
        }
        let band = tail_band(lift.module.order(), &table.normalizer, &next.normalizer);
        out.push(DihedralMoments {
            sign,
            closed,
            group_side,
            hecke_side,
            band,
        });
    }
    Ok(out)
}

fn moment_suite() -> Result<(bool, String)> {
    let mut t = Tally::default();
    let rows = quadratic_moment_bands(3)?;
    for (n, truncated, gap, band) in &rows {
        t.check(gap.abs() <= *band, || {
            format!(
                "level {n}: |{} − 1/3| exceeds band {}",
                render_decimal(truncated, 12),
                render_decimal(band, 12)
            )
        });
    }
    t.check(rows.windows(2).all(|w| w[1].3 < w[0].3), || {
        "band does not shrink".into()
    });
    let (_, last, gap, band) = rows.last().cloned().expect("three levels");
    for d in dihedral_moments(&Limits::default())? {
        let expect = if d.sign == 1 {
            q_frac(1, 3)
        } else {
            q_frac(1, 9)
        };
        t.check(d.closed == expect, || {
            format!("t = {}: closed value {}", d.sign, fmt_q(&d.closed))
        });
        t.check(d.group_side == d.hecke_side, || {
            format!("t = {}: routes differ", d.sign)
        });
        t.check((&d.group_side - &d.closed).abs() <= d.band, || {
            format!(
                "t = {}: gap {} exceeds band {}",
                d.sign,
                render_decimal(&(&d.group_side - &d.closed), 6),
                render_decimal(&d.band, 6)
            )
        });
    }
    t.finish(format!(
        "level 3 moment {} (gap {}, band {})",
        render_decimal(&last, 12),
        render_decimal(&gap, 6),
        render_decimal(&band, 6)
    ))
}

/// Largest deviation between the `G/3G` probabilities of the level-3 table
/// and those recovered from its moments over the level-1 types, with the
/// relative band `(Z₄ − Z₃)/Z₃`.
pub fn cross_truncation_recovery() -> Result<(Q, Q)> {
    let (dec, big) = quadratic_table(3)?;
    let (_, big_next) = quadratic_table(4)?;
    let (_, small) = quadratic_table(1)?;
    let types: Vec<ModuleType> = small.rows.iter().map(|r| r.module_type.clone()).collect();
    let moments: Vec<Q> = types
        .iter()
        .map(|h| moment(&big, h, &dec).map(|m| m.truncated))
        .collect::<Result<_>>()?;
    let recovered = crate::dist::invert_moments(&types, &moments, &dec)?;
    let reduced = big.reduced(&[(3, 1)]);
    let mut worst = Q::zero();
    for (ty, x) in types.iter().zip(&recovered) {
        let exact = reduced
            .iter()
            .find(|(t, _)| t == ty)
            .map_or_else(Q::zero, |(_, q)| q.clone());
        let d = (x - exact).abs();
        if d > worst {
            worst = d;
        }
    }
    Ok((worst, tail_band(1, &big.normalizer, &big_next.normalizer)))
}

fn inversion_suite() -> Result<(bool, String)> {
    let mut t = Tally::default();
    for n in 1..=3 {
        let (dec, table) = quadratic_table(n)?;
        let types: Vec<ModuleType> = table.rows.iter().map(|r| r.module_type.clone()).collect();
        let moments: Vec<Q> = types
            .iter()
            .map(|h| moment(&table, h, &dec).map(|m| m.truncated))
            .collect::<Result<_>>()?;
        let back = crate::dist::invert_moments(&types, &moments, &dec)?;
        let exact = table
            .rows
            .iter()
            .zip(&back)
            .all(|(r, x)| r.probability == *x);
        t.check(exact, || format!("level {n}: inversion is not exact"));
    }
    let (worst, band) = cross_truncation_recovery()?;
    t.check(worst <= band, || {
        format!(
            "recovery error {} exceeds band {}",
            render_decimal(&worst, 6),
            render_decimal(&band, 6)
        )
    });
    t.finish(format!(
        "recovery error {} within band {}",
        render_decimal(&worst, 6),
        render_decimal(&band, 6)
    ))
}

/// Every Γ-module with trivial invariants, order prime to `|Γ|` and at most
/// `bound`, as types over the nontrivial components.
pub fn coprime_modules(dec: &Decomposition, bound: u128) -> Result<Vec<ModuleType>> {
    let n = dec.order() as u64;
    let comps: Vec<usize> = (2..=dec.num_components()).collect();
    let mut exps = Vec::new();
    for p in primes_up_to(bound as u64)
        .into_iter()
        .filter(|p| n % p != 0)
    {
        let mut k = 0;
        while (p as u128).pow(k + 1) <= bound {
            k += 1;
        }
        exps.push((p, k));
    }
    enumerate_types(dec, &comps, &TruncationSpec::new(exps, Some(bound)))
}

/// One grid point of the class-triple check.
pub struct TriplePoint {
    pub group: String,
    pub module_type: ModuleType,
    pub s: usize,
    pub formula: u128,
    pub search: u128,
    pub unique: bool,
}

/// Class triples over every coprime module of order at most `bound` and
/// every conjugacy class of elements with `s² = 1`.
pub fn triple_grid(group: &str, bound: u128, limits: &Limits) -> Result<Vec<TriplePoint>> {
    let (g, dec) = group_with_dec(group)?;
    let involutions: Vec<usize> = g
        .classes()
        .iter()
        .map(|c| c.representative)
        .filter(|&x| g.mul(x, x) == g.identity())
        .collect();
    let mut out = Vec::new();
    for ty in coprime_modules(&dec, bound)? {
        let h = GammaModule::from_type(&ty, &dec)?;
        for &s in &involutions {
            let triple = build_class_triple(&h, &g, s, limits)?;
            let formula = aut_count(&triple, &h, &dec, AutMethod::Formula, limits)?;
            let search = aut_count(&triple, &h, &dec, AutMethod::BruteForce, limits)?;
            let unique = verify_uniqueness(&triple, limits)?;
            out.push(TriplePoint {
                group: group.to_string(),
                module_type: ty.clone(),
                s,
                formula,
                search,
                unique,
            });
        }
    }
    Ok(out)
}

fn triple_suite() -> Result<(bool, String)> {
    let limits = Limits::default();
    let mut t = Tally::default();
    let (c2, dec) = group_with_dec("C2")?;
    let z3 = GammaModule::from_type(&ModuleType::single(2, 3, Partition::new(vec![1])), &dec)?;
    for (s, expect) in [(1usize, 2u128), (0, 6)] {
        let triple = build_class_triple(&z3, &c2, s, &limits)?;
        for method in [AutMethod::Formula, AutMethod::BruteForce] {
            let n = aut_count(&triple, &z3, &dec, method, &limits)?;
            t.check(n == expect, || {
                format!("(C2, Z/3), s = {s}: {n} by {method:?}, expected {expect}")
            });
        }
    }
    let mut points = 0;
    for group in ["C2", "S3", "D4"] {
        for p in triple_grid(group, 125, &limits)? {
            t.check(p.formula == p.search, || {
                format!(
                    "{} {} s={}: formula {}, search {}",
                    p.group, p.module_type, p.s, p.formula, p.search
                )
            });
            t.check(p.unique, || {
                format!("{} {} s={}: lift not unique", p.group, p.module_type, p.s)
            });
            points += 1;
        }
    }
    t.finish(format!("{points} grid points with |h| ≤ 125"))
}

/// Every module over the order with `t` acting by an involution, found by
/// scanning structures of a cyclic group of order 2 on abelian p-groups
/// up to `bound`.
pub fn involutive_omodules(
    o: &HeckeOrder,
    prime: u64,
    t: Option<&AlgElem>,
    bound: u128,
    limits: &Limits,
) -> Result<Vec<OModule>> {
    let c2 = builtin("C2")?;
    let mut out = vec![OModule::zero(prime, o.rank)];
    let mut k = 1u32;
    while (prime as u128).pow(k) <= bound {
        for part in Partition::enumerate(k, k)
            .into_iter()
            .filter(|l| l.size() == k)
        {
            let orders: Vec<u64> = part.parts().iter().map(|&e| prime.pow(e)).collect();
            match t {
                None => out.push(omodule_from_generator(o, prime, None, orders)?),
                Some(elem) => {
                    let mut lim = *limits;
                    lim.structure_module_order = bound as usize;
                    for s in bruteforce_module_structures(&c2, &orders, &lim)? {
                        let mat = &s.module.action[0];
                        out.push(omodule_from_generator(
                            o,
                            prime,
                            Some((elem, mat)),
                            orders.clone(),
                        )?);
                    }
                }
            }
        }
        k += 1;
    }
    Ok(out)
}

/// One Morita setting: the pair, its prime, the order bound on group-ring
/// modules, and the bound on Hecke modules enumerated directly.
struct MoritaCase {
    group: &'static str,
    sub: &'static str,
    prime: u64,
    exponent: u32,
    bound: u128,
    hecke_bound: u128,
}

const MORITA_CASES: [MoritaCase; 2] = [
    MoritaCase {
        group: "S3",
        sub: "S2",
        prime: 2,
        exponent: 3,
        bound: 64,
        hecke_bound: 8,
    },
    MoritaCase {
        group: "D4",
        sub: "tau",
        prime: 3,
        exponent: 4,
        bound: 81,
        hecke_bound: 27,
    },
];

fn morita_suite() -> Result<(bool, String)> {
    let limits = Limits::default();
    let mut t = Tally::default();
    let mut counts = Vec::new();
    for case in &MORITA_CASES {
        let (g, dec) = group_with_dec(case.group)?;
        let o = hecke_order(&dec, &named(&g, case.sub)?, &[case.prime])?;
        let trunc = TruncationSpec::new(vec![(case.prime, case.exponent)], Some(case.bound));
        let types = enumerate_types(&dec, &o.augmentation.components, &trunc)?;
        // group-ring side: G → G^{Γ'} → lift
        for ty in &types {
            let m = GammaModule::from_type(ty, &dec)?;
            let h = invariants_functor(&m, &o, &dec)?;
            let lift = morita_lift(
                &h,
                &o,
                &dec,
                &lift_truncation(&h, &o.augmentation, &dec),
                &limits,
            )?;
            t.check(lift.module_type == *ty, || {
                format!(
                    "{} {ty}: lift of invariants is {}",
                    case.group, lift.module_type
                )
            });
            t.check(lift.aut_module == lift.aut_hecke, || {
                format!("{} {ty}: automorphism counts differ", case.group)
            });
        }
        // Hecke side: H → lift → invariants
        let inv = if o.rank == 2 {
            Some(dihedral_involution(&g, &o)?)
        } else {
            None
        };
        let modules = involutive_omodules(&o, case.prime, inv.as_ref(), case.hecke_bound, &limits)?;
        let r = RankSpec::from_vector(vec![q_int(1); dec.num_components()]);
        let v = rank_transfer(&r, &o.augmentation, &dec);
        let mut lifted = 0;
        for h in &modules {
            if hecke_size_power(h, &o, &v, &dec)? > Q::from_integer(case.bound.into()) {
                continue;
            }
            let lift = morita_lift(h, &o, &dec, &trunc, &limits)?;
            let back = invariants_functor(&lift.module, &o, &dec)?;
            t.check(back.isomorphic(h, &limits)?, || {
                format!("{}: invariants of a lift differ", case.group)
            });
            t.check(lift.aut_module == lift.aut_hecke, || {
                format!("{}: automorphism counts differ", case.group)
            });
            lifted += 1;
        }
        let rows = nongalois_table(&o, &dec, &r, &trunc, &limits)?;
        for row in &rows {
            t.check(row.lifts.len() == 1, || {
                format!("{}: {} lifts for one class", case.group, row.lifts.len())
            });
            t.check(row.agrees(), || {
                format!(
                    "{}: A = {} but B = {}",
                    case.group,
                    fmt_q(&row.column_a),
                    fmt_q(&row.column_b)
                )
            });
        }
        t.check(rows.len() == types.len(), || {
            format!(
                "{}: {} classes for {} types",
                case.group,
                rows.len(),
                types.len()
            )
        });
        counts.push(format!(
            "{}: {} modules, {} Hecke modules lifted",
            case.group,
            types.len(),
            lifted
        ));
    }
    t.finish(counts.join(", "))
}

fn rank_suite() -> Result<(bool, String)> {
    let mut t = Tally::default();
    let (c2, dec) = group_with_dec("C2")?;
    let imag = rank_u(&dec, &[c2.whole()]);
    let real = rank_u(&dec, &[c2.trivial_subgroup()]);
    t.check(*imag.u(2) == Q::zero(), || {
        format!("imaginary u = {}", fmt_q(imag.u(2)))
    });
    t.check(*real.u(2) == Q::one(), || {
        format!("real u = {}", fmt_q(real.u(2)))
    });
    let (d4, dec4) = group_with_dec("D4")?;
    let r4 = rank_u(&dec4, &[d4.trivial_subgroup()]);
    t.check((2..=5).all(|i| *r4.u(i) == Q::one()), || {
        "totally real D4 does not give u = 1".into()
    });
    for (gname, sname, n) in [("S3", "S2", 3i64), ("S4", "S3", 4), ("S5", "S4", 5)] {
        let (g, dec) = group_with_dec(gname)?;
        let aug = augmentation_component(&dec, &named(&g, sname)?)?;
        let r = rank_u(&dec, &[g.trivial_subgroup()]);
        let v = rank_transfer(&r, &aug, &dec);
        t.check(v.len() == 1 && v[0].1 == q_int(n - 1), || {
            format!("{gname}: v = {v:?}")
        });
        let zero = RankSpec::from_vector(vec![Q::zero(); dec.num_components()]);
        t.check(
            rank_transfer(&zero, &aug, &dec)
                .iter()
                .all(|(_, x)| x.is_zero()),
            || format!("{gname}: u = 0"),
        );
    }
    let aug = augmentation_component(&dec4, &named(&d4, "tau")?)?;
    let v = rank_transfer(&r4, &aug, &dec4);
    let lin = component_of_degree(&dec4, &aug.components, 1)?;
    let two = component_of_degree(&dec4, &aug.components, 2)?;
    let get = |i: usize| v.iter().find(|(k, _)| *k == i).map(|(_, x)| x.clone());
    t.check(
        get(lin) == Some(q_int(1)) && get(two) == Some(q_int(2)),
        || format!("D4: v = {v:?}"),
    );
    let (v4, _) = group_with_dec("V4")?;
    let first = named(&v4, "first")?;
    let rep = rank_independence_check(&v4, &first, &first, &[v4.trivial_subgroup()])?;
    t.check(rep.holds, || format!("V4 instance: {rep:?}"));
    let rep = rank_independence_check(
        &d4,
        &named(&d4, "center")?,
        &named(&d4, "tau_center")?,
        &[d4.trivial_subgroup()],
    )?;
    t.check(rep.holds, || format!("D4 instance: {rep:?}"));
    let rep = rank_independence_check(
        &d4,
        &d4.trivial_subgroup(),
        &named(&d4, "tau")?,
        &[named(&d4, "tau")?],
    )?;
    t.check(rep.holds, || "trivial kernel".into());
    t.finish("ranks, transfers and both independence instances".into())
}

/// `(group, components, prime, bound)` for the cohomology grid.
const COHOMOLOGY_GRID: [(&str, u64, u128); 8] = [
    ("C2", 3, 81),
    ("V4", 3, 81),
    ("S3", 2, 64),
    ("S3", 5, 125),
    ("D4", 3, 81),
    ("A4", 5, 125),
    ("S4", 3, 81),
    ("S4", 5, 125),
];

fn cohomology_suite() -> Result<(bool, String)> {
    let mut t = Tally::default();
    let mut modules = 0;
    for (gname, p, bound) in COHOMOLOGY_GRID {
        let (g, dec) = group_with_dec(gname)?;
        let comps: Vec<usize> = (2..=dec.num_components())
            .filter(|&i| {
                dec.components[i - 1].is_split_rational() && dec.verdict(i, p) == Verdict::Good
            })
            .collect();
        let mut k = 0;
        while (p as u128).pow(k + 1) <= bound {
            k += 1;
        }
        let subs = g.two_generated_subgroups();
        for ty in enumerate_types(
            &dec,
            &comps,
            &TruncationSpec::new(vec![(p, k)], Some(bound)),
        )? {
            let m = GammaModule::from_type(&ty, &dec)?;
            for sub in &subs {
                let fnorm = m.fixed_and_norm(&g, sub)?;
                t.check(fnorm.tate_h0_trivial, || {
                    format!(
                        "{gname} {ty}: fixed ≠ norm for a subgroup of order {}",
                        sub.order()
                    )
                });
            }
            modules += 1;
        }
    }
    t.finish(format!("{modules} modules, every subgroup"))
}

/// First samples of the level-2 real quadratic table with seed 2024.
pub const GOLDEN_STREAM: [&str; 12] = [
    "0", "2:3:(2)", "0", "2:3:(1)", "0", "0", "0", "0", "0", "2:3:(1)", "2:3:(1)", "0",
];

pub fn golden_stream() -> Result<Vec<String>> {
    let (_, table) = quadratic_table(2)?;
    Ok(sample(&table, 2024, GOLDEN_STREAM.len())?
        .iter()
        .map(|t| t.to_string())
        .collect())
}

/// Frequency of the trivial cokernel for square `8×8` matrices mod `3^6`.
pub fn trivial_cokernel_frequency(count: usize, seed: u64) -> Result<f64> {
    let cfg = CokernelSamplerConfig {
        prime: 3,
        size: 8,
        rank_offset: 0,
        precision: 6,
        seed,
    };
    let draws = sample_cokernel(&cfg, count)?;
    Ok(draws.iter().filter(|p| p.is_empty()).count() as f64 / count as f64)
}

fn sampler_suite() -> Result<(bool, String)> {
    let start = Instant::now();
    let mut t = Tally::default();
    let stream = golden_stream()?;
    t.check(stream == GOLDEN_STREAM, || format!("stream {stream:?}"));
    t.check(golden_stream()? == stream, || {
        "stream is not reproducible".into()
    });
    let freq = trivial_cokernel_frequency(100_000, 11)?;
    t.check((freq - 0.560126).abs() <= 0.02, || {
        format!("trivial frequency {freq:.6}")
    });
    let elapsed = start.elapsed();
    t.check(elapsed < Duration::from_secs(60), || {
        format!("took {elapsed:?}")
    });
    t.finish(format!(
        "trivial cokernel frequency {freq:.6} in {elapsed:.2?}"
    ))
}
