//! `report`: combined results table over several runs, with
//! significance stars against each preceding run.

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::Args;
use serde::Serialize;

use metaphor_core::report::{render_comparison_table, ReportRow};

use crate::commands::compare::compare_runs;
use crate::commands::evaluate::EvalOutput;
use crate::record::eval_file;
use crate::util::require_exists;

#[derive(Debug, Clone, Args)]
pub struct ReportArgs {
    /// Run directories, in comparison order (each row is tested against
    /// the previous one)
    #[arg(long, value_name = "DIR", num_args = 1.., required = true)]
    pub runs: Vec<PathBuf>,
    /// Split the runs were evaluated on
    #[arg(long, default_value = "test")]
    pub split: String,
    /// Print machine-readable JSON instead of the table
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportEntry {
    pub run: String,
    pub row: ReportRow,
    pub mid_p_vs_previous: Option<f64>,
}

fn load_eval(run: &Path, split: &str) -> Result<EvalOutput> {
    let path = run.join(eval_file(split));
    require_exists(&path).with_context(|| {
        format!(
            "no evaluation for split {split} in {}; run `metaphor evaluate` first",
            run.display()
        )
    })?;
    let text = std::fs::read_to_string(&path)?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn run(args: &ReportArgs) -> Result<Vec<ReportEntry>> {
    let mut entries = Vec::with_capacity(args.runs.len());
    for (i, run_dir) in args.runs.iter().enumerate() {
        let eval = load_eval(run_dir, &args.split)?;
        let (stars, mid_p) = if i == 0 {
            (None, None)
        } else {
            let cmp = compare_runs(&args.runs[i - 1], run_dir, &args.split)?;
            (Some(cmp.stars), Some(cmp.mid_p))
        };
        let name = run_dir
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_else(|| run_dir.display().to_string());
        entries.push(ReportEntry {
            run: name.clone(),
            row: ReportRow {
                name: format!("{name} ({})", eval.mode),
                metrics: eval.report.overall,
                stars,
            },
            mid_p_vs_previous: mid_p,
        });
    }
    if args.json {
        println!("{}", serde_json::to_string_pretty(&entries)?);
    } else {
        let rows: Vec<ReportRow> = entries.iter().map(|e| e.row.clone()).collect();
        print!("{}", render_comparison_table(&rows));
    }
    Ok(entries)
}
