//! `predict`: score a prepared split with a trained run and write
//! per-example predictions.

use std::path::{Path, PathBuf};

use anyhow::{ensure, Context, Result};
use clap::Args;
use serde::{Deserialize, Serialize};

use metaphor_core::corpus::{read_examples_jsonl, ExampleSet, Genre, SplitTag};
use metaphor_core::embeddings::EmbeddingProvider;
use metaphor_core::features::{build_matrix, FeatureConfig};
use metaphor_core::gbdt::GbdtModel;

use crate::record::{predictions_file, ExperimentRecord, MODEL_FILE};
use crate::util::{atomic_write, require_exists, sha256_hex};

#[derive(Debug, Clone, Args)]
pub struct PredictArgs {
    /// Run directory produced by `train`
    #[arg(long, value_name = "DIR")]
    pub run: PathBuf,
    /// Prepared data directory
    #[arg(long, env = "DM_DATA_DIR", value_name = "DIR")]
    pub data: PathBuf,
    /// Split to score: train, dev, or test
    #[arg(long, default_value = "test")]
    pub split: String,
    /// Output file (defaults to predictions-<split>.jsonl in the run)
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

/// One scored example.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredictionRow {
    pub id: String,
    pub genre: Genre,
    pub gold: u8,
    pub pred: u8,
    pub proba: f64,
}

#[derive(Debug, Clone)]
pub struct SplitPredictions {
    pub record: ExperimentRecord,
    pub rows: Vec<PredictionRow>,
    /// SHA-256 of the split file the predictions were computed from.
    pub data_sha256: String,
}

/// Loads a run, rebuilds features for a split, and scores every row.
pub fn predictions_for(run: &Path, data: &Path, split: &str) -> Result<SplitPredictions> {
    let record = ExperimentRecord::load(run)?;
    let model_path = run.join(MODEL_FILE);
    require_exists(&model_path)?;
    let model = GbdtModel::load(&model_path)?;

    let split_path = data.join(format!("{split}.jsonl"));
    require_exists(&split_path)?;
    let examples = read_examples_jsonl(&split_path)
        .with_context(|| format!("reading {}", split_path.display()))?;
    let set = ExampleSet::new(examples, SplitTag::Test)?;

    let provider = crate::provider::load_provider(&record.provider)?;
    ensure!(
        provider.dim() == record.slot_dim,
        "provider {} now has dimension {}, run {} was trained with {}",
        record.provider.path.display(),
        provider.dim(),
        record.run_id,
        record.slot_dim
    );
    let config = FeatureConfig {
        mode: record.mode,
        dim: record.slot_dim,
    };
    let matrix = build_matrix(&set, &config, &provider).context("building features")?;
    ensure!(
        matrix.n_cols() == model.feature_count,
        "feature width {} does not match the model's {}",
        matrix.n_cols(),
        model.feature_count
    );

    let mut rows = Vec::with_capacity(matrix.n_rows());
    for i in 0..matrix.n_rows() {
        let proba = model.predict_proba(matrix.row(i))?;
        rows.push(PredictionRow {
            id: matrix.ids[i].clone(),
            genre: matrix.genres[i],
            gold: matrix.labels[i],
            pred: u8::from(proba >= 0.5),
            proba,
        });
    }
    Ok(SplitPredictions {
        record,
        rows,
        data_sha256: sha256_hex(&split_path)?,
    })
}

pub fn write_predictions(path: &Path, rows: &[PredictionRow]) -> Result<()> {
    let mut buf = Vec::new();
    for row in rows {
        serde_json::to_writer(&mut buf, row)?;
        buf.push(b'\n');
    }
    atomic_write(path, &buf)
}

pub fn read_predictions(path: &Path) -> Result<Vec<PredictionRow>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading predictions {}", path.display()))?;
    let mut rows = Vec::new();
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        rows.push(serde_json::from_str(line)?);
    }
    Ok(rows)
}

pub fn run(args: &PredictArgs) -> Result<(PathBuf, SplitPredictions)> {
    let predictions = predictions_for(&args.run, &args.data, &args.split)?;
    let out = args
        .out
        .clone()
        .unwrap_or_else(|| args.run.join(predictions_file(&args.split)));
    write_predictions(&out, &predictions.rows)?;
    println!(
        "wrote {} predictions for split {} to {}",
        predictions.rows.len(),
        args.split,
        out.display()
    );
    Ok((out, predictions))
}
