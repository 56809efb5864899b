//! Report tables rendered as aligned text or CSV. Rationals are printed
//! exactly, next to a 12-significant-digit decimal.

use std::fmt::Write as _;

use crate::arith::{fmt_q, render_decimal, Q};

pub const DECIMAL_DIGITS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Csv,
}

#[derive(Debug, Clone)]
pub enum Cell {
    Text(String),
    Rational(Q),
}

impl From<String> for Cell {
    fn from(s: String) -> Cell {
        Cell::Text(s)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Cell {
        Cell::Text(s.to_string())
    }
}

impl From<Q> for Cell {
    fn from(q: Q) -> Cell {
        Cell::Rational(q)
    }
}

impl From<&Q> for Cell {
    fn from(q: &Q) -> Cell {
        Cell::Rational(q.clone())
    }
}

macro_rules! cell_from_display {
    ($($t:ty),*) => {$(
        impl From<$t> for Cell {
            fn from(x: $t) -> Cell {
                Cell::Text(x.to_string())
            }
        }
    )*};
}
cell_from_display!(u32, u64, u128, usize, i64, bool);

#[derive(Debug, Clone)]
pub struct Table {
    pub name: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &str, headers: &[&str]) -> Table {
        Table {
            name: name.to_string(),
            headers: headers.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    /// Columns holding a rational in some row get a decimal twin in CSV.
    fn rational_columns(&self) -> Vec<bool> {
        (0..self.headers.len())
            .map(|j| self.rows.iter().any(|r| matches!(r[j], Cell::Rational(_))))
            .collect()
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub title: String,
    pub fields: Vec<(String, Cell)>,
    pub tables: Vec<Table>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Report {
        Report {
            title: title.into(),
            ..Report::default()
        }
    }

    pub fn field(&mut self, key: &str, value: impl Into<Cell>) {
        self.fields.push((key.to_string(), value.into()));
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.render_text(),
            Format::Csv => self.render_csv(),
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{}", self.title).unwrap();
        for (k, v) in &self.fields {
            writeln!(out, "{k}: {}", text_cell(v)).unwrap();
        }
        for t in &self.tables {
            out.push('\n');
            if !t.name.is_empty() {
                writeln!(out, "[{}]", t.name).unwrap();
            }
            let cells: Vec<Vec<String>> = t
                .rows
                .iter()
                .map(|r| r.iter().map(text_cell).collect())
                .collect();
            let widths: Vec<usize> = (0..t.headers.len())
                .map(|j| {
                    cells
                        .iter()
                        .map(|r| r[j].chars().count())
                        .chain([t.headers[j].chars().count()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let line = |row: &[String]| -> String {
                let padded: Vec<String> = row
                    .iter()
                    .zip(&widths)
                    .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                    .collect();
                padded.join("  ").trim_end().to_string()
            };
            writeln!(out, "{}", line(&t.headers)).unwrap();
            for r in &cells {
                writeln!(out, "{}", line(r)).unwrap();
            }
        }
        out
    }

    /// Tables only, separated by blank lines; scalar fields are text-only.
    fn render_csv(&self) -> String {
        let mut blocks = Vec::new();
        for t in &self.tables {
            let rational = t.rational_columns();
            let mut w = csv::Writer::from_writer(Vec::new());
            let mut header = Vec::new();
            for (h, &r) in t.headers.iter().zip(&rational) {
                header.push(h.clone());
                if r {
                    header.push(format!("{h}_decimal"));
                }
            }
            w.write_record(&header).expect("in-memory write");
            for row in &t.rows {
                let mut rec = Vec::new();
                for (c, &r) in row.iter().zip(&rational) {
                    match c {
                        Cell::Text(s) => {
                            rec.push(s.clone());
                            if r {
                                rec.push(String::new());
                            }
                        }
                        Cell::Rational(q) => {
                            rec.push(fmt_q(q));
                            rec.push(render_decimal(q, DECIMAL_DIGITS));
                        }
                    }
                }
                w.write_record(&rec).expect("in-memory write");
            }
            blocks.push(String::from_utf8(w.into_inner().expect("flush")).expect("utf-8"));
        }
        blocks.join("\n")
    }
}

fn text_cell(c: &Cell) -> String {
    match c {
        Cell::Text(s) => s.clone(),
        Cell::Rational(q) if q.is_integer() => fmt_q(q),
        Cell::Rational(q) => format!("{} ≈ {}", fmt_q(q), render_decimal(q, DECIMAL_DIGITS)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q_frac;

    #[test]
    fn rationals_carry_decimals() {
        let mut r = Report::new("demo");
        let mut t = Table::new("", &["type", "p"]);
        t.push(vec!["0".into(), q_frac(1, 3).into()]);
        t.push(vec!["2:3:(1)".into(), q_frac(2, 3).into()]);
        r.tables.push(t);
        let text = r.render(Format::Text);
        assert!(text.contains("1/3 ≈ 0.333333333333"));
        let csv = r.render(Format::Csv);
        assert_eq!(csv.lines().next(), Some("type,p,p_decimal"));
        assert!(csv.contains("2:3:(1),2/3,0.666666666667"));
    }
}
