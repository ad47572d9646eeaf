//! Text, CSV, JSON and LaTeX renderings of coefficient tables and of the
//! trace formula.

use std::fmt::Write as _;

use gammatrace_core::{AlphaTable, Partition, Rational};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormulaFormat {
    Text,
    Latex,
    Json,
}

#[derive(Debug, Error)]
pub enum EmitError {
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("csv row {row}: {message}")]
    Row { row: usize, message: String },
}

#[derive(Serialize)]
struct JsonEntry {
    partition: String,
    alpha: String,
}

#[derive(Serialize)]
struct JsonTable {
    n: usize,
    coefficients: Vec<JsonEntry>,
}

fn json_entries(table: &AlphaTable) -> Vec<JsonEntry> {
    table
        .iter()
        .map(|(s, a)| JsonEntry {
            partition: s.label(),
            alpha: a.to_string(),
        })
        .collect()
}

const CSV_HEADER: [&str; 4] = ["n", "partition", "numerator", "denominator"];

fn csv_rows(tables: &[&AlphaTable]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory csv");
    for t in tables {
        for (s, a) in t.iter() {
            w.write_record([
                t.n().to_string(),
                s.label(),
                a.numer().to_string(),
                a.denom().to_string(),
            ])
            .expect("in-memory csv");
        }
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("csv output is UTF-8")
}

/// One table. Text rows are `label  value`; JSON is a flat list of
/// `{"partition", "alpha"}` objects.
pub fn render_alpha_table(table: &AlphaTable, format: TableFormat) -> String {
    match format {
        TableFormat::Text => {
            let mut out = String::new();
            for (s, a) in table.iter() {
                writeln!(out, "{s}  {a}").unwrap();
            }
            out
        }
        TableFormat::Csv => csv_rows(&[table]),
        TableFormat::Json => {
            let mut out = serde_json::to_string(&json_entries(table)).expect("serializable");
            out.push('\n');
            out
        }
    }
}

/// Several tables at once. CSV shares one header; text separates tables with
/// `n = k` headings; JSON is a list of `{"n", "coefficients"}`.
pub fn render_alpha_tables(tables: &[AlphaTable], format: TableFormat) -> String {
    match format {
        TableFormat::Text => {
            let mut out = String::new();
            for (i, t) in tables.iter().enumerate() {
                if i > 0 {
                    out.push('\n');
                }
                writeln!(out, "n = {}", t.n()).unwrap();
                out.push_str(&render_alpha_table(t, TableFormat::Text));
            }
            out
        }
        TableFormat::Csv => csv_rows(&tables.iter().collect::<Vec<_>>()),
        TableFormat::Json => {
            let doc: Vec<JsonTable> = tables
                .iter()
                .map(|t| JsonTable {
                    n: t.n(),
                    coefficients: json_entries(t),
                })
                .collect();
            let mut out = serde_json::to_string(&doc).expect("serializable");
            out.push('\n');
            out
        }
    }
}

/// Read back the CSV produced by [`render_alpha_table`] or
/// [`render_alpha_tables`]. Rows are grouped by `n`; each group must be a
/// complete table.
pub fn parse_alpha_csv(text: &str) -> Result<Vec<AlphaTable>, EmitError> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let headers = reader.headers()?.clone();
    if headers.iter().ne(CSV_HEADER) {
        return Err(EmitError::Row {
            row: 1,
            message: format!("unexpected header {headers:?}"),
        });
    }
    let mut groups: Vec<(usize, Vec<(Partition, Rational)>)> = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let row = i + 2;
        let record = record?;
        let bad = |message: String| EmitError::Row { row, message };
        let field = |k: usize| {
            record
                .get(k)
                .ok_or_else(|| bad(format!("missing column {}", CSV_HEADER[k])))
        };
        let n: usize = field(0)?.parse().map_err(|_| bad("bad n".into()))?;
        let s: Partition = field(1)?.parse().map_err(|e| bad(format!("{e}")))?;
        let value: Rational = format!("{}/{}", field(2)?, field(3)?)
            .parse()
            .map_err(|e| bad(format!("{e}")))?;
        if s.n() != n {
            return Err(bad(format!("partition {s} does not sum to {n}")));
        }
        match groups.last_mut() {
            Some((m, entries)) if *m == n => entries.push((s, value)),
            _ => groups.push((n, vec![(s, value)])),
        }
    }
    groups
        .into_iter()
        .map(|(n, entries)| {
            let mut sorted = entries;
            sorted.sort_by(|a, b| a.0.cmp(&b.0));
            AlphaTable::from_values(n, sorted.into_iter().map(|(_, v)| v).collect()).map_err(|e| EmitError::Row {
                row: 0,
                message: format!("n = {n}: {e}"),
            })
        })
        .collect()
}

/// One term `α_s Π_j ⟨B ⋯ B⟩` of the formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaTerm {
    pub partition: Partition,
    pub alpha: Rational,
    /// Chain lengths `2 s_j`.
    pub blocks: Vec<usize>,
}

/// The right-hand side `m Σ_s α_s B^(s)` for one `n`. Terms run from the
/// single longest chain down to all pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaDocument {
    pub n: usize,
    pub terms: Vec<FormulaTerm>,
}

impl FormulaDocument {
    pub fn from_table(table: &AlphaTable) -> Self {
        let terms = table
            .iter()
            .rev()
            .map(|(s, a)| FormulaTerm {
                partition: s.clone(),
                alpha: a.clone(),
                blocks: s.parts().iter().map(|p| 2 * p).collect(),
            })
            .collect();
        Self { n: table.n(), terms }
    }
}

#[derive(Serialize)]
struct JsonTerm<'a> {
    partition: String,
    alpha: String,
    blocks: &'a [usize],
}

#[derive(Serialize)]
struct JsonFormula<'a> {
    n: usize,
    overall_factor: &'static str,
    sum_over: &'static str,
    terms: Vec<JsonTerm<'a>>,
}

/// Plain-text index names: `i j k …` while they fit before `z`, then
/// `i1 i2 …`.
fn text_indices(count: usize) -> Vec<String> {
    if count <= 18 {
        (0..count).map(|k| char::from(b'i' + k as u8).to_string()).collect()
    } else {
        (1..=count).map(|k| format!("i{k}")).collect()
    }
}

fn render_text(doc: &FormulaDocument) -> String {
    let idx = text_indices(2 * doc.n);
    let sum = if idx.iter().all(|s| s.len() == 1) {
        idx.concat()
    } else {
        format!("i1···i{}", 2 * doc.n)
    };
    let terms: Vec<String> = doc
        .terms
        .iter()
        .map(|t| {
            let mut out = format!("({})·", t.alpha);
            let mut next = idx.iter();
            for &len in &t.blocks {
                let names: Vec<String> = next.by_ref().take(len).map(|i| format!("B_{i}")).collect();
                write!(out, "<{}>", names.join(" ")).unwrap();
            }
            out
        })
        .collect();
    format!("m * Σ_{{⟨{sum}⟩}} [ {} ]\n", terms.join(" + "))
}

fn latex_fraction(a: &Rational) -> String {
    let abs = a.abs();
    if abs.is_integer() {
        abs.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", abs.numer(), abs.denom())
    }
}

fn render_latex(doc: &FormulaDocument) -> String {
    let letters = doc.n <= 2;
    let index = |k: usize| -> String {
        if letters {
            char::from(b'i' + (k - 1) as u8).to_string()
        } else {
            format!("i_{k}")
        }
    };
    let sum = if letters {
        (1..=2 * doc.n).map(index).collect::<String>()
    } else {
        format!("i_1 \\cdots i_{{{}}}", 2 * doc.n)
    };
    let mut body = String::new();
    for (pos, t) in doc.terms.iter().enumerate() {
        let sign = if t.alpha.is_negative() { "-" } else { "+" };
        match (pos, sign) {
            (0, "+") => {}
            (0, _) => body.push('-'),
            _ => write!(body, " {sign} ").unwrap(),
        }
        let magnitude = t.alpha.abs();
        if !magnitude.is_one() {
            body.push_str(&latex_fraction(&t.alpha));
            body.push(' ');
        }
        let mut start = 1;
        let mut chains = Vec::new();
        for &len in &t.blocks {
            let end = start + len - 1;
            let inner = if len == 2 {
                format!("B_{{{}}} B_{{{}}}", index(start), index(end))
            } else {
                format!("B_{{{}}} \\cdots B_{{{}}}", index(start), index(end))
            };
            chains.push(format!("\\langle {inner} \\rangle"));
            start = end + 1;
        }
        body.push_str(&chains.join(" "));
    }
    format!("m \\sum_{{\\langle {sum} \\rangle}} \\left[ {body} \\right]\n")
}

pub fn render_formula_document(doc: &FormulaDocument, format: FormulaFormat) -> String {
    match format {
        FormulaFormat::Text => render_text(doc),
        FormulaFormat::Latex => render_latex(doc),
        FormulaFormat::Json => {
            let json = JsonFormula {
                n: doc.n,
                overall_factor: "m",
                sum_over: "distinct index assignments",
                terms: doc
                    .terms
                    .iter()
                    .map(|t| JsonTerm {
                        partition: t.partition.label(),
                        alpha: t.alpha.to_string(),
                        blocks: &t.blocks,
                    })
                    .collect(),
            };
            let mut out = serde_json::to_string(&json).expect("serializable");
            out.push('\n');
            out
        }
    }
}

pub fn render_formula(table: &AlphaTable, format: FormulaFormat) -> String {
    render_formula_document(&FormulaDocument::from_table(table), format)
}
