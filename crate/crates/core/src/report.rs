//! Report rendering: aligned result tables and their machine-readable
//! counterparts. Percentages are printed to one decimal place.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::corpus::Genre;
use crate::eval::{Confusion, Metrics, Stars};

/// Evaluation results for one model run on one split.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub split: String,
    pub n: usize,
    pub confusion: Confusion,
    pub overall: Metrics,
    pub per_genre: BTreeMap<Genre, Metrics>,
}

/// One row of a model-comparison table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub name: String,
    pub metrics: Metrics,
    /// Significance of the improvement over the previous row, when a
    /// paired comparison was run.
    pub stars: Option<Stars>,
}

/// A paired comparison between two runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub run_a: String,
    pub run_b: String,
    pub split: String,
    pub n: usize,
    /// Examples where A is wrong and B right.
    pub b: usize,
    /// Examples where A is right and B wrong.
    pub c: usize,
    pub mid_p: f64,
    pub stars: Stars,
}

pub fn format_pct(fraction: f64) -> String {
    format!("{:.1}", fraction * 100.0)
}

/// Renders overall and per-genre metrics as an aligned table.
pub fn render_eval_table(report: &EvalReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "split: {} ({} examples)", report.split, report.n);
    let _ = writeln!(out, "{:<14} {:>6} {:>6} {:>6}", "", "P", "R", "F1");
    let _ = writeln!(
        out,
        "{:<14} {:>6} {:>6} {:>6}",
        "Overall",
        format_pct(report.overall.precision),
        format_pct(report.overall.recall),
        format_pct(report.overall.f1),
    );
    for genre in Genre::ALL {
        if let Some(m) = report.per_genre.get(&genre) {
            let _ = writeln!(
                out,
                "{:<14} {:>6} {:>6} {:>6}",
                genre.name(),
                format_pct(m.precision),
                format_pct(m.recall),
                format_pct(m.f1),
            );
        }
    }
    out
}

/// Renders a model-comparison table with significance stars attached to
/// the F1 column, matching the P / R / F1 layout of the results tables.
pub fn render_comparison_table(rows: &[ReportRow]) -> String {
    let name_width = rows
        .iter()
        .map(|r| r.name.len())
        .max()
        .unwrap_or(5)
        .max(5);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<name_width$} {:>6} {:>6} {:>6}",
        "Model", "P", "R", "F1"
    );
    for row in rows {
        let stars = row.stars.map(|s| s.as_str()).unwrap_or("");
        let _ = writeln!(
            out,
            "{:<name_width$} {:>6} {:>6} {:>6}{}",
            row.name,
            format_pct(row.metrics.precision),
            format_pct(row.metrics.recall),
            format_pct(row.metrics.f1),
            stars,
        );
    }
    let _ = writeln!(
        out,
        "*, **, ***: improvement over the previous row at p < 0.05, 0.01, 0.001\n\
         (mid-p McNemar; no multiple-comparison correction applied)"
    );
    out
}

/// Renders a single paired comparison.
pub fn render_comparison(report: &ComparisonReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{} vs {} on {} ({} examples)",
        report.run_a, report.run_b, report.split, report.n
    );
    let _ = writeln!(
        out,
        "discordant pairs: b = {} (A wrong, B right), c = {} (A right, B wrong)",
        report.b, report.c
    );
    let stars = if report.stars == Stars::None {
        "none".to_string()
    } else {
        report.stars.to_string()
    };
    let _ = writeln!(out, "mid-p = {:.6}, significance: {stars}", report.mid_p);
    let _ = writeln!(out, "(no multiple-comparison correction applied)");
    out
}
