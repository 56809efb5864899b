//! The `galmod` command line. Parsing, validation and every subcommand live
//! here so tests can drive them without spawning a process.

pub mod dataset;
pub mod report;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::arith::{is_prime, parse_q, Q};
use crate::dist::table::tail_band;
use crate::dist::{
    invert_moments, moment, sample, sample_cokernel, truncated_table, CokernelSamplerConfig,
    DistributionTable,
};
use crate::error::{Error, Result};
use crate::group::builtin::{builtin, names};
use crate::group::spec::group_from_spec;
use crate::group::{Group, Subgroup};
use crate::hecke::{
    augmentation_component, hecke_order, nongalois_table, rank_independence_check, rank_transfer,
};
use crate::limits::Limits;
use crate::module::{enumerate_types, AbelianGroup, GammaModule, ModuleType, TruncationSpec};
use crate::rep::{algebra, good_primes, rank_u, Decomposition, RankSpec, Verdict};
use crate::triples::{aut_count, build_class_triple, verify_uniqueness, AutMethod};
use crate::verify;

pub use report::{Cell, Format, Report, Table};

/// Shipped sample of imaginary quadratic class groups.
pub const SAMPLE_DATASET: &str = include_str!("../../data/datasets/imaginary_quadratic.csv");

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "galmod",
    version,
    about = "Group-ring decompositions, class-group heuristics and Hecke orders"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Built-in group name or path to a TOML group spec
    #[arg(long, global = true)]
    pub group: Option<String>,

    /// Named subgroup, `trivial`, `whole`, or an element generating a cyclic subgroup
    #[arg(long, global = true)]
    pub subgroup: Option<String>,

    /// Primes, comma separated
    #[arg(long, global = true, value_delimiter = ',')]
    pub primes: Vec<u64>,

    /// Truncation exponents, one per prime or a single value for all
    #[arg(long, global = true, value_delimiter = ',')]
    pub trunc: Vec<u32>,

    /// Order bound for enumerated modules
    #[arg(long, global = true, default_value_t = 729)]
    pub bound: u128,

    /// Rank vector, one rational per component or a single value for all
    #[arg(long, global = true, value_delimiter = ',', conflicts_with = "places")]
    pub u: Vec<String>,

    /// Decomposition subgroups of the infinite places
    #[arg(long, global = true, value_delimiter = ',')]
    pub places: Vec<String>,

    /// Components to work on (defaults depend on the subcommand)
    #[arg(long, global = true, value_delimiter = ',')]
    pub components: Vec<usize>,

    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Abort on the first malformed dataset row
    #[arg(long, global = true)]
    pub strict: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Simple components of Q[Γ]
    Decompose,
    /// Good-prime verdicts with each test
    GoodPrimes,
    /// Rank vector u, and its transfer v with --subgroup
    Rank,
    /// Module types in the truncation
    Enumerate,
    /// Truncated distribution table
    Dist,
    /// Truncated and closed-form moments
    Moments {
        /// Target type such as `2:3:(1)`; defaults to every type in the table
        #[arg(long = "target")]
        targets: Vec<String>,
    },
    /// Recover probabilities from the table's own moments
    Invert,
    /// Draws from the table, or cokernels of random matrices
    Sample {
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// Sample cokernels of random p-adic matrices instead
        #[arg(long)]
        cokernel: bool,
        #[arg(long, default_value_t = 8)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        offset: usize,
        #[arg(long, default_value_t = 6)]
        precision: u32,
    },
    /// Automorphism counts of class triples
    ClassTriples {
        /// Module type over Γ
        #[arg(long)]
        module: String,
        /// Element with s² = 1; defaults to one per class
        #[arg(long)]
        s: Option<String>,
    },
    /// Hecke order of the augmentation
    Hecke,
    /// Weights grouped by Hecke-module class
    Nongalois,
    /// Rank transfer through a quotient
    Independence {
        /// Normal subgroup to divide by
        #[arg(long)]
        delta: String,
    },
    /// Run the verification suites
    Verify {
        #[arg(long, value_delimiter = ',')]
        suite: Vec<usize>,
    },
    /// Dataset frequencies against the truncated table
    Compare {
        /// Dataset CSV; defaults to the shipped sample
        #[arg(long)]
        dataset: Option<PathBuf>,
    },
}

/// Exit status with what would go to stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run_from<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match run(&cli) {
        Ok((report, passed)) => Outcome {
            code: if passed { EXIT_OK } else { EXIT_FAILED },
            stdout: report.render(cli.format),
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error[{}]: {e}\n", e.code()),
        },
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Usage(_) | Error::Parse(_) | Error::Format(_) => EXIT_USAGE,
        _ => EXIT_FAILED,
    }
}

/// The report, and whether every check it carries passed.
pub fn run(cli: &Cli) -> Result<(Report, bool)> {
    let limits = Limits::default();
    match &cli.command {
        Command::Verify { suite } => return Ok(run_verify(suite)),
        Command::Independence { delta } => return independence(cli, delta),
        Command::Sample {
            count,
            cokernel: true,
            size,
            offset,
            precision,
        } => {
            return Ok((
                cokernel_report(cli, *count, *size, *offset, *precision)?,
                true,
            ))
        }
        _ => {}
    }
    let g = load_group(
        cli.group
            .as_deref()
            .ok_or_else(|| Error::Usage("--group is required".into()))?,
        &limits,
    )?;
    let dec = Decomposition::with_cap(&g, limits.group_order)?;
    let report = match &cli.command {
        Command::Decompose => decompose(&g, &dec),
        Command::GoodPrimes => good_prime_report(cli, &g, &dec)?,
        Command::Rank => rank_report(cli, &g, &dec)?,
        Command::Enumerate => enumerate_report(cli, &g, &dec)?,
        Command::Dist => dist_report(cli, &g, &dec)?,
        Command::Moments { targets } => moments_report(cli, &g, &dec, targets)?,
        Command::Invert => return invert_report(cli, &g, &dec),
        Command::Sample { count, .. } => sample_report(cli, &g, &dec, *count)?,
        Command::ClassTriples { module, s } => {
            return triples_report(&g, &dec, module, s.as_deref(), &limits)
        }
        Command::Hecke => hecke_report(cli, &g, &dec)?,
        Command::Nongalois => return nongalois_report(cli, &g, &dec, &limits),
        Command::Compare { dataset } => compare_report(cli, &g, &dec, dataset.as_ref())?,
        Command::Verify { .. } | Command::Independence { .. } => unreachable!(),
    };
    Ok((report, true))
}

pub fn load_group(spec: &str, limits: &Limits) -> Result<Group> {
    if names().contains(&spec)
        || spec
            .strip_prefix('C')
            .is_some_and(|n| n.parse::<usize>().is_ok_and(|n| n >= 1))
    {
        return builtin(spec);
    }
    let text = std::fs::read_to_string(spec).map_err(|e| {
        Error::Usage(format!(
            "`{spec}` is neither a built-in group nor a readable file: {e}"
        ))
    })?;
    group_from_spec(&text, limits.group_order)
}

/// `trivial`, `whole`, a named subgroup, or the cyclic subgroup of an element.
pub fn resolve_subgroup(g: &Group, name: &str) -> Result<Subgroup> {
    match name.trim() {
        "trivial" => Ok(g.trivial_subgroup()),
        "whole" => Ok(g.whole()),
        n => match g.named_subgroup(n) {
            Some(s) => Ok(s.clone()),
            None => Ok(g.subgroup_generated(&[g.parse_element(n)?])),
        },
    }
}

fn subgroup_arg(cli: &Cli, g: &Group) -> Result<Subgroup> {
    resolve_subgroup(
        g,
        cli.subgroup
            .as_deref()
            .ok_or_else(|| Error::Usage("--subgroup is required".into()))?,
    )
}

fn primes_arg(cli: &Cli) -> Result<Vec<u64>> {
    let mut seen = Vec::new();
    for &p in &cli.primes {
        if !is_prime(p) {
            return Err(Error::Usage(format!("{p} is not prime")));
        }
        if seen.contains(&p) {
            return Err(Error::Usage(format!("prime {p} listed twice")));
        }
        seen.push(p);
    }
    Ok(seen)
}

fn truncation_arg(cli: &Cli) -> Result<TruncationSpec> {
    let primes = primes_arg(cli)?;
    let exps: Vec<u32> = match cli.trunc.len() {
        0 => vec![1; primes.len()],
        1 => vec![cli.trunc[0]; primes.len()],
        n if n == primes.len() => cli.trunc.clone(),
        n => {
            return Err(Error::Usage(format!(
                "{n} truncation exponents for {} primes",
                primes.len()
            )))
        }
    };
    Ok(TruncationSpec::new(
        primes.into_iter().zip(exps).collect(),
        Some(cli.bound),
    ))
}

fn rank_arg(cli: &Cli, g: &Group, dec: &Decomposition) -> Result<RankSpec> {
    match (cli.u.is_empty(), cli.places.is_empty()) {
        (false, false) => Err(Error::Usage("give --u or --places, not both".into())),
        (true, true) => Err(Error::Usage("give one of --u or --places".into())),
        (true, false) => {
            let places = cli
                .places
                .iter()
                .map(|p| resolve_subgroup(g, p))
                .collect::<Result<Vec<_>>>()?;
            Ok(rank_u(dec, &places))
        }
        (false, true) => {
            let vals = cli
                .u
                .iter()
                .map(|s| {
                    parse_q(s).ok_or_else(|| Error::Usage(format!("bad rational `{s}` in --u")))
                })
                .collect::<Result<Vec<Q>>>()?;
            let n = dec.num_components();
            match vals.len() {
                1 => Ok(RankSpec::from_vector(vec![vals[0].clone(); n])),
                k if k == n => Ok(RankSpec::from_vector(vals)),
                k => Err(Error::Usage(format!(
                    "--u has {k} entries, expected 1 or {n}"
                ))),
            }
        }
    }
}

/// `--components`, else the augmentation of `--subgroup`, else every
/// nontrivial split rational component good at all the primes.
fn components_arg(cli: &Cli, g: &Group, dec: &Decomposition) -> Result<Vec<usize>> {
    if !cli.components.is_empty() {
        for &i in &cli.components {
            dec.component(i)?;
        }
        return Ok(cli.components.clone());
    }
    if cli.subgroup.is_some() {
        return Ok(augmentation_component(dec, &subgroup_arg(cli, g)?)?.components);
    }
    let primes = primes_arg(cli)?;
    let comps: Vec<usize> = dec
        .components
        .iter()
        .skip(1)
        .filter(|c| {
            c.is_split_rational()
                && primes
                    .iter()
                    .all(|&p| dec.verdict(c.index, p) == Verdict::Good)
        })
        .map(|c| c.index)
        .collect();
    if comps.is_empty() {
        return Err(Error::Usage(
            "no nontrivial component is good at every prime; pass --components".into(),
        ));
    }
    Ok(comps)
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

fn invariants_of(t: &ModuleType, dec: &Decomposition) -> Result<String> {
    let m = GammaModule::from_type(t, dec)?;
    Ok(join(
        &AbelianGroup::new(m.orders().to_vec()).invariant_factors(),
        ".",
    ))
}

fn decompose(g: &Group, dec: &Decomposition) -> Report {
    let mut rep = Report::new(format!("decompose {}", g.name()));
    rep.field("order", g.order());
    rep.field("classes", dec.table.num_classes());
    rep.field("components", dec.num_components());
    let mut t = Table::new(
        "components",
        &[
            "component",
            "h",
            "center_degree",
            "dim",
            "split",
            "character",
            "idempotent",
        ],
    );
    for c in &dec.components {
        t.push(vec![
            c.index.into(),
            c.h.into(),
            c.center_degree.into(),
            c.dim.into(),
            c.split.into(),
            join(
                &c.character
                    .iter()
                    .map(crate::arith::fmt_q)
                    .collect::<Vec<_>>(),
                " ",
            )
            .into(),
            algebra::format(g, &c.idempotent).into(),
        ]);
    }
    rep.tables.push(t);
    rep
}

fn opt(b: Option<bool>) -> Cell {
    b.map_or_else(|| "-".into(), |x| x.into())
}

fn good_prime_report(cli: &Cli, g: &Group, dec: &Decomposition) -> Result<Report> {
    let comps = if cli.subgroup.is_some() || !cli.components.is_empty() {
        components_arg(cli, g, dec)?
    } else {
        (2..=dec.num_components()).collect()
    };
    let primes = if cli.primes.is_empty() {
        (2..=31).filter(|&p| is_prime(p)).collect()
    } else {
        primes_arg(cli)?
    };
    let mut rep = Report::new(format!("good-primes {}", g.name()));
    rep.field("components", join(&comps, ","));
    let mut t = Table::new(
        "primes",
        &[
            "prime",
            "verdict",
            "denominator",
            "gram",
            "closed",
            "consistent",
        ],
    );
    for r in good_primes(dec, &comps, &primes).values() {
        t.push(vec![
            r.prime.into(),
            r.verdict.to_string().into(),
            opt(r.denominator),
            opt(r.gram),
            opt(r.closed),
            r.consistent().into(),
        ]);
    }
    rep.tables.push(t);
    Ok(rep)
}

fn rank_report(cli: &Cli, g: &Group, dec: &Decomposition) -> Result<Report> {
    let r = rank_arg(cli, g, dec)?;
    let mut rep = Report::new(format!("rank {}", g.name()));
    let mut t = Table::new("rank", &["component", "h", "u"]);
    for c in &dec.components {
        t.push(vec![c.index.into(), c.h.into(), r.u(c.index).into()]);
    }
    rep.tables.push(t);
    if cli.subgroup.is_some() {
        let aug = augmentation_component(dec, &subgroup_arg(cli, g)?)?;
        let mut v = Table::new("transfer", &["component", "multiplicity", "v"]);
        for (i, x) in rank_transfer(&r, &aug, dec) {
            v.push(vec![
                i.into(),
                aug.multiplicity(i).unwrap_or(0).into(),
                x.into(),
            ]);
        }
        rep.tables.push(v);
    }
    Ok(rep)
}

fn enumerate_report(cli: &Cli, g: &Group, dec: &Decomposition) -> Result<Report> {
    let comps = components_arg(cli, g, dec)?;
    let trunc = truncation_arg(cli)?;
    let mut rep = Report::new(format!("enumerate {}", g.name()));
    rep.field("components", join(&comps, ","));
    let mut t = Table::new("types", &["type", "order", "invariants"]);
    for ty in enumerate_types(dec, &comps, &trunc)? {
        t.push(vec![
            ty.to_string().into(),
            ty.order(dec).unwrap_or(0).into(),
            invariants_of(&ty, dec)?.into(),
        ]);
    }
    rep.field("count", t.rows.len());
    rep.tables.push(t);
    Ok(rep)
}

fn table_arg(cli: &Cli, g: &Group, dec: &Decomposition) -> Result<DistributionTable> {
    let comps = components_arg(cli, g, dec)?;
    let r = rank_arg(cli, g, dec)?;
    truncated_table(dec, &comps, &r, &truncation_arg(cli)?)
}

fn dist_report(cli: &Cli, g: &Group, dec: &Decomposition) -> Result<Report> {
    let table = table_arg(cli, g, dec)?;
    let mut rep = Report::new(format!("dist {}", g.name()));
    rep.field("components", join(&table.components, ","));
    rep.field("normalizer", &table.normalizer);
    let mut t = Table::new("distribution", &["type", "order", "weight", "probability"]);
    for row in &table.rows {
        t.push(vec![
            row.module_type.to_string().into(),
            row.module_type.order(dec).unwrap_or(0).into(),
            (&row.weight).into(),
            (&row.probability).into(),
        ]);
    }
    rep.tables.push(t);
    Ok(rep)
}

fn moments_report(cli: &Cli, g: &Group, dec: &Decomposition, targets: &[String]) -> Result<Report> {
    let table = table_arg(cli, g, dec)?;
    // next level: every exponent one higher, same bound
    let mut next_trunc = table.truncation.clone();
    for e in next_trunc.exponents.iter_mut() {
        e.1 += 1;
    }
    let next = truncated_table(dec, &table.components, &table.rank, &next_trunc)?;
    let targets: Vec<ModuleType> = if targets.is_empty() {
        table.rows.iter().map(|r| r.module_type.clone()).collect()
    } else {
        targets
            .iter()
            .map(|s| ModuleType::parse(s))
            .collect::<Result<_>>()?
    };
    let mut rep = Report::new(format!("moments {}", g.name()));
    rep.field("components", join(&table.components, ","));
    let mut t = Table::new(
        "moments",
        &["target", "truncated", "closed_form", "gap", "band"],
    );
    for h in &targets {
        let m = moment(&table, h, dec)?;
        let order = h
            .order(dec)
            .ok_or_else(|| Error::TooLarge(format!("order of {h}")))?;
        let band = tail_band(order, &table.normalizer, &next.normalizer);
        t.push(vec![
            h.to_string().into(),
            m.truncated.into(),
            m.closed_form.into(),
            m.gap.into(),
            band.into(),
        ]);
    }
    rep.tables.push(t);
    Ok(rep)
}

fn invert_report(cli: &Cli, g: &Group, dec: &Decomposition) -> Result<(Report, bool)> {
    let table = table_arg(cli, g, dec)?;
    let types: Vec<ModuleType> = table.rows.iter().map(|r| r.module_type.clone()).collect();
    let moments: Vec<Q> = types
        .iter()
        .map(|h| moment(&table, h, dec).map(|m| m.truncated))
        .collect::<Result<_>>()?;
    let back = invert_moments(&types, &moments, dec)?;
    let mut rep = Report::new(format!("invert {}", g.name()));
    let mut t = Table::new(
        "inversion",
        &["type", "moment", "recovered", "probability", "exact"],
    );
    let mut all = true;
    for ((row, m), x) in table.rows.iter().zip(&moments).zip(&back) {
        let exact = row.probability == *x;
        all &= exact;
        t.push(vec![
            row.module_type.to_string().into(),
            m.into(),
            x.into(),
            (&row.probability).into(),
            exact.into(),
        ]);
    }
    rep.field("exact", all);
    rep.tables.push(t);
    Ok((rep, all))
}

fn sample_report(cli: &Cli, g: &Group, dec: &Decomposition, count: usize) -> Result<Report> {
    let table = table_arg(cli, g, dec)?;
    let draws = sample(&table, cli.seed, count)?;
    let mut rep = Report::new(format!("sample {}", g.name()));
    rep.field("seed", cli.seed);
    let mut t = Table::new("draws", &["label", "invariants", "type"]);
    for (k, ty) in draws.iter().enumerate() {
        t.push(vec![
            (k + 1).into(),
            invariants_of(ty, dec)?.into(),
            ty.to_string().into(),
        ]);
    }
    rep.tables.push(t);
    Ok(rep)
}

fn cokernel_report(
    cli: &Cli,
    count: usize,
    size: usize,
    offset: usize,
    precision: u32,
) -> Result<Report> {
    let primes = primes_arg(cli)?;
    let [prime] = primes[..] else {
        return Err(Error::Usage(
            "cokernel sampling takes exactly one prime".into(),
        ));
    };
    let cfg = CokernelSamplerConfig {
        prime,
        size,
        rank_offset: offset,
        precision,
        seed: cli.seed,
    };
    let draws = sample_cokernel(&cfg, count)?;
    let mut rep = Report::new("sample cokernels");
    rep.field("prime", prime);
    rep.field("seed", cli.seed);
    let trivial = draws.iter().filter(|p| p.is_empty()).count();
    rep.field(
        "trivial",
        Q::new((trivial as i64).into(), (count.max(1) as i64).into()),
    );
    let mut t = Table::new("draws", &["label", "invariants", "partition"]);
    for (k, part) in draws.iter().enumerate() {
        let inv: Vec<u64> = part.parts().iter().rev().map(|&e| prime.pow(e)).collect();
        t.push(vec![
            (k + 1).into(),
            join(&inv, ".").into(),
            part.to_string().into(),
        ]);
    }
    rep.tables.push(t);
    Ok(rep)
}

fn triples_report(
    g: &Group,
    dec: &Decomposition,
    module: &str,
    s: Option<&str>,
    limits: &Limits,
) -> Result<(Report, bool)> {
    let ty = ModuleType::parse(module)?;
    let h = GammaModule::from_type(&ty, dec)?;
    let choices: Vec<usize> = match s {
        Some(text) => vec![g.parse_element(text)?],
        None => g
            .classes()
            .iter()
            .map(|c| c.representative)
            .filter(|&x| g.mul(x, x) == g.identity())
            .collect(),
    };
    let mut rep = Report::new(format!("class-triples {}", g.name()));
    rep.field("module", ty.to_string());
    rep.field("module order", h.order());
    let mut t = Table::new(
        "triples",
        &["s", "group_order", "formula", "search", "unique"],
    );
    let mut ok = true;
    for x in choices {
        let triple = build_class_triple(&h, g, x, limits)?;
        let formula = aut_count(&triple, &h, dec, AutMethod::Formula, limits)?;
        let search = aut_count(&triple, &h, dec, AutMethod::BruteForce, limits)?;
        let unique = verify_uniqueness(&triple, limits)?;
        ok &= formula == search && unique;
        t.push(vec![
            g.element_label(x).into(),
            triple.order().into(),
            formula.into(),
            search.into(),
            unique.into(),
        ]);
    }
    rep.tables.push(t);
    Ok((rep, ok))
}

fn hecke_report(cli: &Cli, g: &Group, dec: &Decomposition) -> Result<Report> {
    let sub = subgroup_arg(cli, g)?;
    let primes = primes_arg(cli)?;
    let o = hecke_order(dec, &sub, &primes)?;
    let aug = &o.augmentation;
    let mut rep = Report::new(format!("hecke {}", g.name()));
    rep.field("rank", o.rank);
    rep.field("absolutely irreducible", aug.is_absolutely_irreducible(dec));
    rep.field("identity", algebra::format(g, &o.identity));
    let mut c = Table::new("components", &["component", "multiplicity", "dim"]);
    for &(i, d) in &o.component_dims {
        c.push(vec![
            i.into(),
            aug.multiplicity(i).unwrap_or(0).into(),
            d.into(),
        ]);
    }
    rep.tables.push(c);
    let mut t = Table::new("local", &["prime", "maximal", "basis"]);
    for l in &o.local {
        let basis: Vec<String> = l.basis.iter().map(|b| algebra::format(g, b)).collect();
        t.push(vec![
            l.prime.into(),
            l.maximal.into(),
            basis.join("; ").into(),
        ]);
    }
    rep.tables.push(t);
    Ok(rep)
}

fn nongalois_report(
    cli: &Cli,
    g: &Group,
    dec: &Decomposition,
    limits: &Limits,
) -> Result<(Report, bool)> {
    let sub = subgroup_arg(cli, g)?;
    let trunc = truncation_arg(cli)?;
    let o = hecke_order(dec, &sub, &trunc.primes())?;
    let r = rank_arg(cli, g, dec)?;
    let rows = nongalois_table(&o, dec, &r, &trunc, limits)?;
    let mut rep = Report::new(format!("nongalois {}", g.name()));
    let v = rank_transfer(&r, &o.augmentation, dec);
    rep.field(
        "v",
        join(
            &v.iter()
                .map(|(i, x)| format!("{i}:{}", crate::arith::fmt_q(x)))
                .collect::<Vec<_>>(),
            ",",
        ),
    );
    let mut t = Table::new(
        "classes",
        &["module", "aut", "lifts", "column_a", "column_b", "agrees"],
    );
    let mut ok = true;
    for row in &rows {
        ok &= row.agrees();
        let lifts: Vec<String> = row.lifts.iter().map(ModuleType::to_string).collect();
        let m = &row.module;
        let name = if m.is_zero() {
            "0".to_string()
        } else {
            join(&m.orders, ".")
        };
        t.push(vec![
            name.into(),
            row.aut_hecke.into(),
            lifts.join(" | ").into(),
            (&row.column_a).into(),
            (&row.column_b).into(),
            row.agrees().into(),
        ]);
    }
    rep.tables.push(t);
    Ok((rep, ok))
}

fn independence(cli: &Cli, delta: &str) -> Result<(Report, bool)> {
    let limits = Limits::default();
    let sigma = load_group(
        cli.group
            .as_deref()
            .ok_or_else(|| Error::Usage("--group is required".into()))?,
        &limits,
    )?;
    let d = resolve_subgroup(&sigma, delta)?;
    let sp = subgroup_arg(cli, &sigma)?;
    let places = if cli.places.is_empty() {
        vec![sigma.trivial_subgroup()]
    } else {
        cli.places
            .iter()
            .map(|p| resolve_subgroup(&sigma, p))
            .collect::<Result<_>>()?
    };
    let r = rank_independence_check(&sigma, &d, &sp, &places)?;
    let fmt_v = |v: &[(usize, Q)]| {
        join(
            &v.iter()
                .map(|(i, x)| format!("{i}:{}", crate::arith::fmt_q(x)))
                .collect::<Vec<_>>(),
            ",",
        )
    };
    let mut rep = Report::new(format!("independence {}", sigma.name()));
    rep.field("holds", r.holds);
    rep.field("v through the group", fmt_v(&r.v_sigma));
    rep.field("v through the quotient", fmt_v(&r.v_gamma));
    rep.field("dims through the group", join(&r.dims_sigma, ","));
    rep.field("dims through the quotient", join(&r.dims_gamma, ","));
    let mut t = Table::new("matched", &["component", "quotient_component"]);
    for &(a, b) in &r.matched {
        t.push(vec![a.into(), b.into()]);
    }
    rep.tables.push(t);
    Ok((rep, r.holds))
}

fn run_verify(suites: &[usize]) -> (Report, bool) {
    let list: Vec<usize> = if suites.is_empty() {
        verify::SUITES.iter().map(|s| s.0).collect()
    } else {
        suites.to_vec()
    };
    let mut rep = Report::new("verify");
    let mut t = Table::new("suites", &["suite", "status", "seconds", "title", "detail"]);
    let mut all = true;
    let mut total = 0.0;
    for k in list {
        let o = verify::run_suite(k);
        all &= o.passed;
        total += o.elapsed.as_secs_f64();
        t.push(vec![
            k.into(),
            (if o.passed { "PASS" } else { "FAIL" }).into(),
            format!("{:.2}", o.elapsed.as_secs_f64()).into(),
            o.title.into(),
            o.detail.into(),
        ]);
    }
    rep.field("passed", all);
    rep.field("seconds", format!("{total:.2}"));
    rep.tables.push(t);
    (rep, all)
}

fn compare_report(
    cli: &Cli,
    g: &Group,
    dec: &Decomposition,
    path: Option<&PathBuf>,
) -> Result<Report> {
    let data = match path {
        Some(p) => dataset::ingest_dataset(p, cli.strict)?,
        None => dataset::parse_dataset(SAMPLE_DATASET, cli.strict)?,
    };
    let comps = components_arg(cli, g, dec)?;
    let [component] = comps[..] else {
        return Err(Error::Usage(
            "compare works on a single component; pass --components".into(),
        ));
    };
    let r = rank_arg(cli, g, dec)?;
    let mut rep = dataset::compare(&data, dec, component, &r, &truncation_arg(cli)?)?;
    rep.title = format!("compare {}", g.name());
    rep.field("u", r.u(component));
    Ok(rep)
}
