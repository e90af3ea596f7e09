//! `evaluate`: score a split, report overall and per-genre metrics, and
//! persist both the predictions and the evaluation report into the run
//! directory.

use std::path::PathBuf;

use anyhow::Result;
use clap::Args;
use serde::{Deserialize, Serialize};

use metaphor_core::eval::{confusion, metrics_by_genre, prf1};
use metaphor_core::report::{render_eval_table, EvalReport};

use crate::commands::predict::{predictions_for, write_predictions};
use crate::record::{eval_file, predictions_file};
use crate::util::atomic_write;

#[derive(Debug, Clone, Args)]
pub struct EvaluateArgs {
    /// Run directory produced by `train`
    #[arg(long, value_name = "DIR")]
    pub run: PathBuf,
    /// Prepared data directory
    #[arg(long, env = "DM_DATA_DIR", value_name = "DIR")]
    pub data: PathBuf,
    /// Split to evaluate: train, dev, or test
    #[arg(long, default_value = "test")]
    pub split: String,
    /// Print the machine-readable JSON report instead of the table
    #[arg(long)]
    pub json: bool,
}

/// The persisted evaluation artifact: run identity, input hash, and the
/// metrics report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalOutput {
    pub run_id: String,
    pub mode: String,
    pub data_sha256: String,
    pub report: EvalReport,
}

pub fn run(args: &EvaluateArgs) -> Result<EvalOutput> {
    let predictions = predictions_for(&args.run, &args.data, &args.split)?;
    let preds: Vec<u8> = predictions.rows.iter().map(|r| r.pred).collect();
    let golds: Vec<u8> = predictions.rows.iter().map(|r| r.gold).collect();
    let genres: Vec<_> = predictions.rows.iter().map(|r| r.genre).collect();

    let conf = confusion(&preds, &golds)?;
    let report = EvalReport {
        split: args.split.clone(),
        n: predictions.rows.len(),
        confusion: conf,
        overall: prf1(&conf),
        per_genre: metrics_by_genre(&preds, &golds, &genres)?,
    };
    let output = EvalOutput {
        run_id: predictions.record.run_id.clone(),
        mode: predictions.record.mode.to_string(),
        data_sha256: predictions.data_sha256.clone(),
        report,
    };

    write_predictions(
        &args.run.join(predictions_file(&args.split)),
        &predictions.rows,
    )?;
    atomic_write(
        &args.run.join(eval_file(&args.split)),
        serde_json::to_string_pretty(&output)?.as_bytes(),
    )?;

    if args.json {
        println!("{}", serde_json::to_string_pretty(&output)?);
    } else {
        print!("{}", render_eval_table(&output.report));
    }
    Ok(output)
}
