//! Output records and their table, JSON and CSV renderings.

use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::extremal::SharpnessReport;
use crate::proof_trace::{MonotonicityReport, ReducedMax};
use crate::report::BoundReport;
use crate::scalar::{format_rational, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

/// A fraction as printed in a source, kept unreduced for display.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrintedFraction {
    pub num: i64,
    pub den: i64,
}

impl PrintedFraction {
    pub fn value(&self) -> Rational {
        crate::scalar::ratio(self.num, self.den)
    }

    pub fn label(&self) -> String {
        if self.den == 1 {
            self.num.to_string()
        } else {
            format!("{}/{}", self.num, self.den)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientRow {
    pub k: usize,
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CeilingRow {
    pub class: crate::class_maps::ClassTag,
    /// `(label, value)` for `|a3|, |a4|, |a5|, |H22|, |T|, |FS|`.
    pub constituents: Vec<(&'static str, Rational)>,
    pub recomputed: Rational,
    pub printed: PrintedFraction,
    pub matches: bool,
    pub empirical_h31: f64,
    pub empirical_t: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ResultItem {
    Bound(BoundReport),
    ReducedMax {
        class: crate::class_maps::ClassTag,
        result: ReducedMax,
        claimed: Rational,
        pass: bool,
    },
    Monotonicity(MonotonicityReport),
    Sharpness(SharpnessReport),
    Coefficient(CoefficientRow),
    Ceiling(CeilingRow),
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct OutputRecord {
    pub command: String,
    pub inputs: Vec<(String, String)>,
    pub results: Vec<ResultItem>,
    pub notes: Vec<String>,
}

/// `{num, den}` with integer fields when they fit in 64 bits.
pub fn rational_json(q: &Rational) -> Value {
    let part = |b: &num_bigint::BigInt| match b.to_i64() {
        Some(v) => json!(v),
        None => json!(b.to_string()),
    };
    json!({ "num": part(q.numer()), "den": part(q.denom()) })
}

fn opt_rational_json(q: Option<&Rational>) -> Value {
    q.map(rational_json).unwrap_or(Value::Null)
}

fn fmt_f64(v: f64) -> String {
    format!("{v:.12}")
}

fn join_params(p: &[f64]) -> String {
    p.iter().map(|v| format!("{v}")).collect::<Vec<_>>().join(";")
}

impl ResultItem {
    pub fn to_json(&self) -> Value {
        match self {
            ResultItem::Bound(r) => json!({
                "kind": "bound",
                "class": r.class.cli_name(),
                "functional": r.functional.cli_name(),
                "model": r.model,
                "best_modulus": r.best_modulus,
                "best_params": r.best_params,
                "paper_bound": opt_rational_json(r.paper_bound.as_ref()),
                "verdict": r.verdict.to_string(),
            }),
            ResultItem::ReducedMax {
                class,
                result,
                claimed,
                pass,
            } => json!({
                "kind": "reduced_max",
                "class": class.cli_name(),
                "value": result.value,
                "c": result.c,
                "rho": result.rho,
                "claimed": rational_json(claimed),
                "pass": pass,
            }),
            ResultItem::Monotonicity(m) => json!({
                "kind": "monotonicity",
                "class": m.class.cli_name(),
                "resolution": m.resolution,
                "segments": m.segments,
            }),
            ResultItem::Sharpness(s) => json!({
                "kind": "sharpness",
                "class": s.spec.class.cli_name(),
                "variant": s.spec.variant.to_string(),
                "functional": s.functional.cli_name(),
                "normalized": s.normalized,
                "value": rational_json(&s.value),
                "bound": opt_rational_json(s.bound.as_ref()),
                "attains": s.attains,
                "note": s.note,
            }),
            ResultItem::Coefficient(c) => json!({
                "kind": "coefficient",
                "k": c.k,
                "value": rational_json(&c.value),
            }),
            ResultItem::Ceiling(row) => {
                let mut constituents = Map::new();
                for (name, v) in &row.constituents {
                    constituents.insert((*name).to_string(), rational_json(v));
                }
                json!({
                    "kind": "ceiling",
                    "class": row.class.cli_name(),
                    "constituents": constituents,
                    "recomputed": rational_json(&row.recomputed),
                    "printed": { "num": row.printed.num, "den": row.printed.den },
                    "matches": row.matches,
                    "empirical_h31": row.empirical_h31,
                    "empirical_t": row.empirical_t,
                })
            }
        }
    }

    fn table_line(&self) -> String {
        match self {
            ResultItem::Bound(r) => format!(
                "{:<7} {:<4} {:<16} best={} bound={} {} params=[{}]",
                r.class.cli_name(),
                r.functional.cli_name(),
                r.model,
                fmt_f64(r.best_modulus),
                r.paper_bound
                    .as_ref()
                    .map(format_rational)
                    .unwrap_or_else(|| "-".into()),
                r.verdict,
                join_params(&r.best_params),
            ),
            ResultItem::ReducedMax {
                class,
                result,
                claimed,
                pass,
            } => format!(
                "{:<7} reduced max F = {} at (c, rho) = ({}, {}), claimed {} [{}]",
                class.cli_name(),
                fmt_f64(result.value),
                result.c,
                result.rho,
                format_rational(claimed),
                if *pass { "ok" } else { "FAIL" },
            ),
            ResultItem::Monotonicity(m) => {
                let parts: Vec<String> = m
                    .segments
                    .iter()
                    .map(|s| {
                        format!(
                            "c in [{}, {}{} {:?}{}: {} violating grid points over {} c-values",
                            s.c_interval.0,
                            s.c_interval.1,
                            if s.include_hi { "]" } else { ")" },
                            s.claimed,
                            if s.required { "" } else { " (not required)" },
                            s.violation_count,
                            s.checked_c,
                        )
                    })
                    .collect();
                format!(
                    "{:<7} monotonicity at resolution {}: {}",
                    m.class.cli_name(),
                    m.resolution,
                    parts.join("; ")
                )
            }
            ResultItem::Sharpness(s) => format!(
                "{:<7} extremal {:<12} {} = {} (bound {}) normalized={} attains={}",
                s.spec.class.cli_name(),
                s.spec.variant.to_string(),
                s.functional.cli_name(),
                format_rational(&s.value),
                s.bound
                    .as_ref()
                    .map(format_rational)
                    .unwrap_or_else(|| "-".into()),
                s.normalized,
                s.attains,
            ),
            ResultItem::Coefficient(c) => format!("a_{:<3} = {}", c.k, format_rational(&c.value)),
            ResultItem::Ceiling(row) => {
                let parts: Vec<String> = row
                    .constituents
                    .iter()
                    .map(|(n, v)| format!("{n}={}", format_rational(v)))
                    .collect();
                format!(
                    "{:<7} {} | recomputed {} | printed {} | {} | empirical |H3(1)| {} | empirical |a2a3-a4| {}",
                    row.class.cli_name(),
                    parts.join(" "),
                    format_rational(&row.recomputed),
                    row.printed.label(),
                    if row.matches { "match" } else { "MISMATCH" },
                    fmt_f64(row.empirical_h31),
                    fmt_f64(row.empirical_t),
                )
            }
        }
    }

    /// Columns of [`CSV_HEADER`].
    fn csv_row(&self) -> [String; 9] {
        match self {
            ResultItem::Bound(r) => [
                "bound".into(),
                r.class.cli_name().into(),
                r.functional.cli_name().into(),
                r.model.clone(),
                format!("{}", r.best_modulus),
                join_params(&r.best_params),
                r.paper_bound.as_ref().map(format_rational).unwrap_or_default(),
                r.verdict.to_string(),
                String::new(),
            ],
            ResultItem::ReducedMax {
                class,
                result,
                claimed,
                pass,
            } => [
                "reduced_max".into(),
                class.cli_name().into(),
                "t".into(),
                "proof-trace".into(),
                format!("{}", result.value),
                format!("{};{}", result.c, result.rho),
                format_rational(claimed),
                if *pass { "pass" } else { "fail" }.into(),
                String::new(),
            ],
            ResultItem::Monotonicity(m) => [
                "monotonicity".into(),
                m.class.cli_name().into(),
                "t".into(),
                "proof-trace".into(),
                String::new(),
                String::new(),
                String::new(),
                if m.required_violations() == 0 { "pass" } else { "fail" }.into(),
                self.table_line(),
            ],
            ResultItem::Sharpness(s) => [
                "sharpness".into(),
                s.spec.class.cli_name().into(),
                s.functional.cli_name().into(),
                format!("extremal:{}", s.spec.variant),
                format_rational(&s.modulus()),
                String::new(),
                s.bound.as_ref().map(format_rational).unwrap_or_default(),
                if s.attains { "attains" } else { "does-not-attain" }.into(),
                s.note.clone().unwrap_or_default(),
            ],
            ResultItem::Coefficient(c) => [
                "coefficient".into(),
                String::new(),
                String::new(),
                String::new(),
                format_rational(&c.value),
                c.k.to_string(),
                String::new(),
                String::new(),
                String::new(),
            ],
            ResultItem::Ceiling(row) => [
                "ceiling".into(),
                row.class.cli_name().into(),
                "h31".into(),
                "triangle".into(),
                format_rational(&row.recomputed),
                String::new(),
                row.printed.label(),
                if row.matches { "match" } else { "mismatch" }.into(),
                format!(
                    "empirical_h31={} empirical_t={}",
                    row.empirical_h31, row.empirical_t
                ),
            ],
        }
    }
}

pub const CSV_HEADER: [&str; 9] = [
    "kind",
    "class",
    "functional",
    "model",
    "best_modulus",
    "best_params",
    "paper_bound",
    "verdict",
    "detail",
];

impl OutputRecord {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            ..Self::default()
        }
    }

    pub fn input(&mut self, key: &str, value: impl ToString) {
        self.inputs.push((key.to_string(), value.to_string()));
    }

    pub fn to_json(&self) -> Value {
        let mut inputs = Map::new();
        for (k, v) in &self.inputs {
            inputs.insert(k.clone(), Value::String(v.clone()));
        }
        json!({
            "command": self.command,
            "inputs": inputs,
            "results": self.results.iter().map(ResultItem::to_json).collect::<Vec<_>>(),
            "notes": self.notes,
        })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("json");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(CSV_HEADER).expect("csv header");
                for r in &self.results {
                    w.write_record(r.csv_row()).expect("csv row");
                }
                String::from_utf8(w.into_inner().expect("csv flush")).expect("utf8")
            }
            Format::Table => {
                let mut out = format!("== {} ==\n", self.command);
                for (k, v) in &self.inputs {
                    out.push_str(&format!("  {k}: {v}\n"));
                }
                for r in &self.results {
                    out.push_str(&r.table_line());
                    out.push('\n');
                }
                for n in &self.notes {
                    out.push_str(&format!("note: {n}\n"));
                }
                out
            }
        }
    }
}
