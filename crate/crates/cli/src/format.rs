//! The function-set document (JSON syntax) and the fraction-table CSV.
//!
//! ```text
//! {
//!   "domain_size": 4,
//!   "codomain_size": 2,
//!   "functions": [
//!     [0, 1, 1, 0]
//!   ],
//!   "neighborhood": [[0, 1], [0, 2], [1, 3], [2, 3]],
//!   "metric": "abs"
//! }
//! ```
//!
//! `neighborhood` is an undirected edge list and `metric` is either `"abs"`
//! (`|i - j|` on value indices) or the row-major upper triangle of the
//! distance matrix. Both are optional.

use std::fmt::Write as _;

use nfl_core::{FiniteFunction, FunctionSet, LogFraction, Neighborhood, SpaceSignature, ValueMetric};
use num_bigint::BigUint;
use serde::Deserialize;

use crate::error::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    domain_size: usize,
    codomain_size: usize,
    #[serde(default)]
    functions: Vec<Vec<usize>>,
    #[serde(default)]
    neighborhood: Option<Vec<[usize; 2]>>,
    #[serde(default)]
    metric: Option<RawMetric>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawMetric {
    Named(String),
    UpperTriangle(Vec<f64>),
}

/// A parsed function-set document.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionSetFile {
    pub set: FunctionSet,
    /// Functions in the order they appear in the file.
    pub listed: Vec<FiniteFunction>,
    pub neighborhood: Option<Neighborhood>,
    pub metric: Option<ValueMetric>,
}

impl FunctionSetFile {
    pub fn new(set: FunctionSet) -> Self {
        FunctionSetFile {
            listed: set.iter().cloned().collect(),
            set,
            neighborhood: None,
            metric: None,
        }
    }

    pub fn signature(&self) -> SpaceSignature {
        self.set.signature()
    }
}

fn field_error(location: impl Into<String>, message: impl ToString) -> CliError {
    CliError::Parse {
        location: location.into(),
        message: message.to_string(),
    }
}

pub fn parse_function_set(text: &str) -> Result<FunctionSetFile, CliError> {
    let raw: RawDocument = serde_json::from_str(text).map_err(|e| {
        // serde_json appends " at line L column C"; the location is reported separately.
        let message = e.to_string();
        let suffix = format!(" at line {} column {}", e.line(), e.column());
        let message = message.strip_suffix(&suffix).unwrap_or(&message).to_string();
        field_error(format!("line {} column {}", e.line(), e.column()), message)
    })?;
    let signature = SpaceSignature::new(raw.domain_size, raw.codomain_size)
        .map_err(|e| field_error("domain_size/codomain_size", e))?;

    let mut set = FunctionSet::empty(signature);
    let mut listed = Vec::with_capacity(raw.functions.len());
    for (i, values) in raw.functions.into_iter().enumerate() {
        if values.len() != signature.domain_size() {
            return Err(field_error(
                format!("functions[{i}]"),
                format!("has {} values, domain_size is {}", values.len(), signature.domain_size()),
            ));
        }
        if let Some(j) = values.iter().position(|&v| v >= signature.codomain_size()) {
            return Err(field_error(
                format!("functions[{i}][{j}]"),
                format!("value {} is outside 0..{}", values[j], signature.codomain_size()),
            ));
        }
        let f = FiniteFunction::new(signature, values).map_err(|e| field_error(format!("functions[{i}]"), e))?;
        if !set.insert(f.clone()).expect("same signature") {
            let first = listed.iter().position(|g| g == &f).expect("already listed");
            return Err(field_error(format!("functions[{i}]"), format!("duplicate of functions[{first}]")));
        }
        listed.push(f);
    }

    let neighborhood = match raw.neighborhood {
        None => None,
        Some(edges) => {
            let edges: Vec<(usize, usize)> = edges.into_iter().map(|[a, b]| (a, b)).collect();
            for (i, &(a, b)) in edges.iter().enumerate() {
                if a >= signature.domain_size() || b >= signature.domain_size() || a == b {
                    return Err(field_error(
                        format!("neighborhood[{i}]"),
                        format!("edge [{a}, {b}] must join two distinct points in 0..{}", signature.domain_size()),
                    ));
                }
            }
            Some(Neighborhood::from_edges(signature.domain_size(), &edges).map_err(|e| field_error("neighborhood", e))?)
        }
    };

    let metric = match raw.metric {
        None => None,
        Some(RawMetric::Named(name)) if name == "abs" => Some(ValueMetric::absolute(signature.codomain_size())),
        Some(RawMetric::Named(name)) => {
            return Err(field_error("metric", format!("unknown metric {name:?}, expected \"abs\" or a list")))
        }
        Some(RawMetric::UpperTriangle(values)) => Some(
            ValueMetric::from_upper_triangle(signature.codomain_size(), &values).map_err(|e| field_error("metric", e))?,
        ),
    };

    Ok(FunctionSetFile {
        set,
        listed,
        neighborhood,
        metric,
    })
}

fn write_list<T: std::fmt::Display>(out: &mut String, items: impl IntoIterator<Item = T>) {
    out.push('[');
    for (i, v) in items.into_iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        write!(out, "{v}").expect("writing to a String");
    }
    out.push(']');
}

/// Serializes a document, one function per line, LF line endings.
pub fn emit_function_set(doc: &FunctionSetFile) -> String {
    let sig = doc.signature();
    let mut out = String::new();
    out.push_str("{\n");
    writeln!(out, "  \"domain_size\": {},", sig.domain_size()).unwrap();
    writeln!(out, "  \"codomain_size\": {},", sig.codomain_size()).unwrap();
    if doc.listed.is_empty() {
        out.push_str("  \"functions\": []");
    } else {
        out.push_str("  \"functions\": [\n");
        for (i, f) in doc.listed.iter().enumerate() {
            out.push_str("    ");
            write_list(&mut out, f.values());
            out.push_str(if i + 1 < doc.listed.len() { ",\n" } else { "\n" });
        }
        out.push_str("  ]");
    }
    if let Some(nb) = &doc.neighborhood {
        out.push_str(",\n  \"neighborhood\": ");
        let edges: Vec<String> = nb.edges().iter().map(|(a, b)| format!("[{a}, {b}]")).collect();
        write_list(&mut out, edges);
    }
    if let Some(metric) = &doc.metric {
        out.push_str(",\n  \"metric\": ");
        let values: Vec<String> = metric
            .upper_triangle()
            .iter()
            .map(|d| serde_json::to_string(d).expect("finite distance"))
            .collect();
        write_list(&mut out, values);
    }
    out.push_str("\n}\n");
    out
}

pub const FRACTION_HEADER: [&str; 4] = ["x_size", "y_size", "num_histograms", "log10_fraction"];

/// One line of the fraction table.
#[derive(Debug, Clone, PartialEq)]
pub struct FractionRow {
    pub x_size: usize,
    pub y_size: usize,
    pub num_histograms: BigUint,
    /// Already rounded to six decimals.
    pub log10_fraction: f64,
}

impl FractionRow {
    pub fn new(x_size: usize, y_size: usize, num_histograms: BigUint, fraction: &LogFraction) -> Self {
        let log10_fraction = format_log10(fraction.log10_value).parse().expect("formatted float");
        FractionRow {
            x_size,
            y_size,
            num_histograms,
            log10_fraction,
        }
    }
}

/// Six fixed decimals, never `-0.000000`.
pub fn format_log10(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

pub fn write_fraction_csv(rows: &[FractionRow]) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Io(e.to_string());
    w.write_record(FRACTION_HEADER).map_err(io)?;
    for r in rows {
        w.write_record([
            r.x_size.to_string(),
            r.y_size.to_string(),
            r.num_histograms.to_string(),
            format_log10(r.log10_fraction),
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("ASCII output"))
}

pub fn read_fraction_csv(text: &str) -> Result<Vec<FractionRow>, CliError> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers().map_err(|e| field_error("header", e))?.clone();
    if header.iter().ne(FRACTION_HEADER) {
        return Err(field_error("header", format!("expected {}", FRACTION_HEADER.join(","))));
    }
    let mut rows = Vec::new();
    for (i, record) in r.records().enumerate() {
        let line = i + 2;
        let record = record.map_err(|e| field_error(format!("line {line}"), e))?;
        if record.len() != FRACTION_HEADER.len() {
            return Err(field_error(format!("line {line}"), "expected 4 fields"));
        }
        let bad = |col: &str, e: &dyn std::fmt::Display| field_error(format!("line {line} {col}"), e);
        rows.push(FractionRow {
            x_size: record[0].parse().map_err(|e| bad("x_size", &e))?,
            y_size: record[1].parse().map_err(|e| bad("y_size", &e))?,
            num_histograms: record[2].parse().map_err(|e| bad("num_histograms", &e))?,
            log10_fraction: record[3].parse().map_err(|e| bad("log10_fraction", &e))?,
        });
    }
    Ok(rows)
}
