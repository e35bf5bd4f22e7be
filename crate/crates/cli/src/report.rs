//! Output documents. Each serializes to JSON directly and flattens to a
//! header plus rows for the table and CSV renderers.
//!
//! CSV header contract: quantity columns are named `DPlus`, `DMinus`, `D`,
//! `SPlus`, `SMinus`, `S`, `E`, and the first column is `voter` (1-based)
//! or `N`.

use cbpower::exact::{self, Rational};
use serde::{Deserialize, Serialize};

use crate::args::{Format, NumericMode};
use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy)]
pub struct Numeric {
    pub mode: NumericMode,
    pub digits: usize,
}

impl Numeric {
    pub fn format(&self, r: &Rational) -> String {
        match self.mode {
            NumericMode::Rational => r.to_string(),
            NumericMode::Decimal => exact::format_decimal(r, self.digits),
        }
    }

    /// Shortest round-trip form, or the exact binary value rounded like a
    /// rational in decimal mode.
    pub fn float(&self, x: f64) -> String {
        match (self.mode, Rational::from_float(x)) {
            (NumericMode::Decimal, Some(r)) => exact::format_decimal(&r, self.digits),
            _ => x.to_string(),
        }
    }

    fn opt_float(&self, x: Option<f64>) -> String {
        x.map(|v| self.float(v)).unwrap_or_default()
    }
}

pub trait Tabular {
    /// Context lines printed above the table.
    fn preamble(&self) -> Vec<String>;
    fn header(&self) -> Vec<String>;
    fn rows(&self, numeric: Numeric) -> Vec<Vec<String>>;
}

pub fn render<T: Tabular + Serialize>(doc: &T, format: Format, numeric: Numeric) -> Result<String> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_string_pretty(doc).expect("documents serialize");
            out.push('\n');
            Ok(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| CliError::Usage(format!("CSV output failed: {e}"));
            w.write_record(doc.header()).map_err(io)?;
            for row in doc.rows(numeric) {
                w.write_record(row).map_err(io)?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?;
            Ok(String::from_utf8(bytes).expect("UTF-8 input"))
        }
        Format::Table => Ok(table(&doc.preamble(), &doc.header(), &doc.rows(numeric))),
    }
}

fn table(preamble: &[String], header: &[String], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:>w$}"))
            .collect();
        padded.join("  ").trim_end().to_string()
    };
    let mut out = String::new();
    for p in preamble {
        out.push_str(p);
        out.push('\n');
    }
    if !preamble.is_empty() {
        out.push('\n');
    }
    out.push_str(&line(header));
    out.push('\n');
    let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
    out.push_str(&line(&rule));
    out.push('\n');
    for row in rows {
        out.push_str(&line(row));
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VoterRow {
    pub voter: usize,
    #[serde(rename = "DPlus")]
    pub d_plus: String,
    #[serde(rename = "DMinus")]
    pub d_minus: String,
    #[serde(rename = "D")]
    pub d: String,
    #[serde(rename = "SPlus")]
    pub s_plus: String,
    #[serde(rename = "SMinus")]
    pub s_minus: String,
    #[serde(rename = "S")]
    pub s: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisDoc {
    pub system: String,
    pub measure: String,
    pub voters: Vec<VoterRow>,
    #[serde(rename = "E")]
    pub efficiency: String,
}

impl AnalysisDoc {
    pub fn new(report: &cbpower::engine::PowerReport, numeric: Numeric) -> Self {
        let f = |r: &Rational| numeric.format(r);
        AnalysisDoc {
            system: report.system.clone(),
            measure: report.measure.clone(),
            voters: report
                .voters
                .iter()
                .map(|v| VoterRow {
                    voter: v.voter + 1,
                    d_plus: f(&v.d_plus),
                    d_minus: f(&v.d_minus),
                    d: f(&v.d),
                    s_plus: f(&v.s_plus),
                    s_minus: f(&v.s_minus),
                    s: f(&v.s),
                })
                .collect(),
            efficiency: f(&report.efficiency),
        }
    }
}

impl Tabular for AnalysisDoc {
    fn preamble(&self) -> Vec<String> {
        vec![
            format!("system:  {}", self.system),
            format!("measure: {}", self.measure),
        ]
    }

    fn header(&self) -> Vec<String> {
        ["voter", "DPlus", "DMinus", "D", "SPlus", "SMinus", "S", "E"]
            .map(String::from)
            .to_vec()
    }

    fn rows(&self, _numeric: Numeric) -> Vec<Vec<String>> {
        self.voters
            .iter()
            .map(|v| {
                vec![
                    v.voter.to_string(),
                    v.d_plus.clone(),
                    v.d_minus.clone(),
                    v.d.clone(),
                    v.s_plus.clone(),
                    v.s_minus.clone(),
                    v.s.clone(),
                    self.efficiency.clone(),
                ]
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRow {
    pub check: String,
    pub measure: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationDoc {
    pub system: String,
    pub status: Status,
    pub summary: String,
    pub checks: Vec<CheckRow>,
}

impl Tabular for ValidationDoc {
    fn preamble(&self) -> Vec<String> {
        vec![
            format!("system: {}", self.system),
            format!("{}: {}", self.status.as_str(), self.summary),
        ]
    }

    fn header(&self) -> Vec<String> {
        ["check", "measure", "status", "detail"]
            .map(String::from)
            .to_vec()
    }

    fn rows(&self, _numeric: Numeric) -> Vec<Vec<String>> {
        self.checks
            .iter()
            .map(|c| {
                vec![
                    c.check.clone(),
                    c.measure.clone(),
                    c.status.as_str().to_string(),
                    c.detail.clone(),
                ]
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    #[serde(rename = "N")]
    pub voters: usize,
    pub value: String,
    /// `false` when the value is a floating approximation.
    pub exact: bool,
    pub limit: Option<f64>,
    pub bound: Option<f64>,
    pub gap: Option<f64>,
    pub ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceDoc {
    pub quantity: String,
    pub family: String,
    pub measure: String,
    pub warnings: Vec<String>,
    pub rows: Vec<ConvergenceRow>,
}

impl Tabular for ConvergenceDoc {
    fn preamble(&self) -> Vec<String> {
        let mut lines = vec![
            format!("quantity: {}", self.quantity),
            format!("family:   {}", self.family),
            format!("measure:  {}", self.measure),
        ];
        lines.extend(self.warnings.iter().map(|w| format!("warning:  {w}")));
        lines
    }

    fn header(&self) -> Vec<String> {
        vec![
            "N".into(),
            self.quantity.clone(),
            "limit".into(),
            "bound".into(),
            "gap".into(),
            "ratio".into(),
        ]
    }

    fn rows(&self, numeric: Numeric) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| {
                vec![
                    r.voters.to_string(),
                    r.value.clone(),
                    numeric.opt_float(r.limit),
                    numeric.opt_float(r.bound),
                    numeric.opt_float(r.gap),
                    numeric.opt_float(r.ratio),
                ]
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateRow {
    /// 1-based; absent for `E`.
    pub voter: Option<usize>,
    pub quantity: String,
    pub estimate: f64,
    pub std_error: f64,
    pub hits: u64,
    pub exact: Option<String>,
    /// `|estimate - exact| / std_error`.
    pub z: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleDoc {
    pub system: String,
    pub measure: String,
    pub samples: u64,
    pub seed: u64,
    pub warnings: Vec<String>,
    pub estimates: Vec<EstimateRow>,
}

impl Tabular for SampleDoc {
    fn preamble(&self) -> Vec<String> {
        let mut lines = vec![
            format!("system:  {}", self.system),
            format!("measure: {}", self.measure),
            format!("samples: {} (seed {})", self.samples, self.seed),
        ];
        lines.extend(self.warnings.iter().map(|w| format!("warning: {w}")));
        lines
    }

    fn header(&self) -> Vec<String> {
        [
            "voter",
            "quantity",
            "estimate",
            "std_error",
            "hits",
            "exact",
            "z",
        ]
        .map(String::from)
        .to_vec()
    }

    fn rows(&self, numeric: Numeric) -> Vec<Vec<String>> {
        self.estimates
            .iter()
            .map(|e| {
                vec![
                    e.voter.map(|v| v.to_string()).unwrap_or_default(),
                    e.quantity.clone(),
                    numeric.float(e.estimate),
                    numeric.float(e.std_error),
                    e.hits.to_string(),
                    e.exact.clone().unwrap_or_default(),
                    numeric.opt_float(e.z),
                ]
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvariantDoc {
    pub voters: usize,
    pub winning_coalitions: usize,
    pub invariant: bool,
    pub weights: Option<Vec<String>>,
    pub quota: Option<String>,
}

impl Tabular for InvariantDoc {
    fn preamble(&self) -> Vec<String> {
        vec![
            format!(
                "{} voters, {} winning coalitions",
                self.voters, self.winning_coalitions
            ),
            if self.invariant {
                "permutation invariant".to_string()
            } else {
                "not permutation invariant".to_string()
            },
        ]
    }

    fn header(&self) -> Vec<String> {
        ["invariant", "quota", "weights"].map(String::from).to_vec()
    }

    fn rows(&self, _numeric: Numeric) -> Vec<Vec<String>> {
        vec![vec![
            self.invariant.to_string(),
            self.quota.clone().unwrap_or_default(),
            self.weights
                .as_ref()
                .map(|w| w.join(" "))
                .unwrap_or_default(),
        ]]
    }
}
