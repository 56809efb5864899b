//! Class-group datasets: `label,invariants` rows with dot-joined invariant
//! factors, and the comparison of their p-parts against a truncated table.

use std::path::Path;

use crate::arith::render_f64;
use crate::dist::table::local_normalizer;
use crate::dist::truncated_table;
use crate::error::{Error, Result};
use crate::module::{ModuleType, Partition, TruncationSpec, TypeEntry};
use crate::rep::{Decomposition, RankSpec};

use super::report::{Report, Table};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DatasetRow {
    pub label: i64,
    /// `d₁ | d₂ | …`, each at least 2; empty for the trivial group.
    pub invariants: Vec<u64>,
}

impl DatasetRow {
    /// Exponents of the cyclic p-power factors.
    pub fn p_exponents(&self, p: u64) -> Vec<u32> {
        let mut out: Vec<u32> = self
            .invariants
            .iter()
            .map(|&d| {
                let (mut n, mut e) = (d, 0);
                while n % p == 0 {
                    n /= p;
                    e += 1;
                }
                e
            })
            .filter(|&e| e > 0)
            .collect();
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    pub fn encode_invariants(&self) -> String {
        self.invariants
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(".")
    }
}

/// Rows kept, and the line-numbered problems skipped in lenient mode.
#[derive(Debug, Clone, Default)]
pub struct Dataset {
    pub rows: Vec<DatasetRow>,
    pub skipped: Vec<String>,
}

fn parse_row(label: &str, invariants: &str) -> std::result::Result<DatasetRow, String> {
    let label: i64 = label
        .trim()
        .parse()
        .map_err(|_| format!("bad label `{label}`"))?;
    let mut factors = Vec::new();
    let inv = invariants.trim();
    if !inv.is_empty() {
        for piece in inv.split('.') {
            let d: u64 = piece
                .trim()
                .parse()
                .map_err(|_| format!("bad invariant factor `{piece}`"))?;
            if d < 2 {
                return Err(format!("invariant factor {d} is below 2"));
            }
            if let Some(&prev) = factors.last() {
                if d % prev != 0 {
                    return Err(format!("{prev} does not divide {d}"));
                }
            }
            factors.push(d);
        }
    }
    Ok(DatasetRow {
        label,
        invariants: factors,
    })
}

/// Parses dataset text. Strict mode stops at the first bad row.
pub fn parse_dataset(text: &str, strict: bool) -> Result<Dataset> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| Error::Format(e.to_string()))?
        .clone();
    if headers.len() < 2 || headers[0].trim() != "label" || headers[1].trim() != "invariants" {
        return Err(Error::Format(
            "header must start with `label,invariants`".into(),
        ));
    }
    let mut out = Dataset::default();
    for rec in reader.records() {
        let rec = rec.map_err(|e| Error::Format(e.to_string()))?;
        let line = rec.position().map_or(0, |p| p.line());
        let parsed = if rec.len() < 2 {
            Err("expected two fields".to_string())
        } else {
            parse_row(&rec[0], &rec[1])
        };
        match parsed {
            Ok(row) => out.rows.push(row),
            Err(msg) if strict => return Err(Error::Format(format!("line {line}: {msg}"))),
            Err(msg) => out.skipped.push(format!("line {line}: {msg}")),
        }
    }
    Ok(out)
}

pub fn ingest_dataset(path: &Path, strict: bool) -> Result<Dataset> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
    parse_dataset(&text, strict)
}

/// Type of the row's p-parts on the given components, when the p-part is
/// `h` copies of one partition for a single component per prime.
pub fn row_type(
    row: &DatasetRow,
    component: usize,
    h: usize,
    primes: &[u64],
) -> Option<ModuleType> {
    let mut entries = Vec::new();
    for &p in primes {
        let part = Partition::from_exponents(&row.p_exponents(p), h)?;
        if !part.is_empty() {
            entries.push(TypeEntry {
                component,
                prime: p,
                partition: part,
            });
        }
    }
    ModuleType::new(entries).ok()
}

/// `Π_p Π_j (1 − p^{−(hu+j)})`, the limiting probability that the p-parts
/// are trivial.
pub fn trivial_part_prediction(
    dec: &Decomposition,
    component: usize,
    r: &RankSpec,
    primes: &[u64],
) -> f64 {
    let c = &dec.components[component - 1];
    let s = c.h as f64 * crate::arith::q_to_f64(r.u(component));
    primes
        .iter()
        .map(|&p| 1.0 / local_normalizer(p, s))
        .product()
}

fn frac(a: usize, b: usize) -> crate::arith::Q {
    crate::arith::Q::new((a as i64).into(), (b as i64).into())
}

/// Empirical frequency of each truncated type next to its probability.
pub fn compare(
    data: &Dataset,
    dec: &Decomposition,
    component: usize,
    r: &RankSpec,
    trunc: &TruncationSpec,
) -> Result<Report> {
    if data.rows.is_empty() {
        return Err(Error::Format("dataset has no rows".into()));
    }
    let primes = trunc.primes();
    let c = dec.require_supported(component)?;
    let table = truncated_table(dec, &[component], r, trunc)?;
    let n = data.rows.len();
    let types: Vec<Option<ModuleType>> = data
        .rows
        .iter()
        .map(|row| row_type(row, component, c.h as usize, &primes))
        .collect();
    let mut rep = Report::new("compare");
    rep.field("rows", n);
    rep.field("skipped", data.skipped.len());
    rep.field("component", component);
    rep.field(
        "primes",
        if primes.is_empty() {
            "-".to_string()
        } else {
            primes
                .iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(",")
        },
    );
    let trivial = trivial_part_prediction(dec, component, r, &primes);
    rep.field(
        "trivial part, limit",
        render_f64(trivial, super::report::DECIMAL_DIGITS),
    );
    let mut t = Table::new("frequencies", &["type", "count", "empirical", "predicted"]);
    let mut matched = 0;
    for row in &table.rows {
        let count = types
            .iter()
            .filter(|x| x.as_ref() == Some(&row.module_type))
            .count();
        matched += count;
        t.push(vec![
            row.module_type.to_string().into(),
            count.into(),
            frac(count, n).into(),
            row.probability.clone().into(),
        ]);
    }
    t.push(vec![
        "other".into(),
        (n - matched).into(),
        frac(n - matched, n).into(),
        "".into(),
    ]);
    rep.tables.push(t);
    Ok(rep)
}
