//! `compare`: mid-p McNemar test between two runs' predictions on the
//! same split.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::Args;

use metaphor_core::eval::{mcnemar_midp, significance_stars};
use metaphor_core::report::{render_comparison, ComparisonReport};

use crate::commands::predict::{read_predictions, PredictionRow};
use crate::record::predictions_file;
use crate::util::require_exists;

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    /// Baseline run directory (model A)
    #[arg(long, value_name = "DIR")]
    pub run_a: PathBuf,
    /// Candidate run directory (model B)
    #[arg(long, value_name = "DIR")]
    pub run_b: PathBuf,
    /// Split both runs were evaluated on
    #[arg(long, default_value = "test")]
    pub split: String,
    /// Print the machine-readable JSON report instead of text
    #[arg(long)]
    pub json: bool,
}

fn load_rows(run: &Path, split: &str) -> Result<Vec<PredictionRow>> {
    let path = run.join(predictions_file(split));
    require_exists(&path).with_context(|| {
        format!(
            "no predictions for split {split} in {}; run `metaphor evaluate` or `metaphor predict` first",
            run.display()
        )
    })?;
    read_predictions(&path)
}

fn run_name(run: &Path) -> String {
    run.file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| run.display().to_string())
}

/// Computes the comparison without printing; shared with `report`.
pub fn compare_runs(run_a: &Path, run_b: &Path, split: &str) -> Result<ComparisonReport> {
    let rows_a = load_rows(run_a, split)?;
    let rows_b = load_rows(run_b, split)?;
    if rows_a.len() != rows_b.len() {
        bail!(
            "runs evaluated different example counts on {split}: {} vs {}",
            rows_a.len(),
            rows_b.len()
        );
    }
    for (a, b) in rows_a.iter().zip(&rows_b) {
        if a.id != b.id {
            bail!(
                "runs evaluated different example sets on {split}: first divergent id {} vs {}",
                a.id,
                b.id
            );
        }
        if a.gold != b.gold {
            bail!("gold labels disagree for example {}", a.id);
        }
    }
    let preds_a: Vec<u8> = rows_a.iter().map(|r| r.pred).collect();
    let preds_b: Vec<u8> = rows_b.iter().map(|r| r.pred).collect();
    let golds: Vec<u8> = rows_a.iter().map(|r| r.gold).collect();
    let result = mcnemar_midp(&preds_a, &preds_b, &golds)?;
    Ok(ComparisonReport {
        run_a: run_name(run_a),
        run_b: run_name(run_b),
        split: split.to_string(),
        n: rows_a.len(),
        b: result.b,
        c: result.c,
        mid_p: result.mid_p,
        stars: significance_stars(result.mid_p),
    })
}

pub fn run(args: &CompareArgs) -> Result<ComparisonReport> {
    let report = compare_runs(&args.run_a, &args.run_b, &args.split)?;
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        print!("{}", render_comparison(&report));
    }
    Ok(report)
}
