//! `train`: build features for the prepared training split and fit the
//! boosted ensemble.

use std::collections::BTreeMap;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Args;

use metaphor_core::corpus::{read_examples_jsonl, ExampleSet, SplitTag};
use metaphor_core::features::{build_matrix, FeatureConfig, Mode};
use metaphor_core::gbdt::{train as train_gbdt, GbdtParams};

use crate::provider::{load_provider, resolve_spec};
use crate::record::{ExperimentRecord, MODEL_FILE, RECORD_FILE};
use crate::util::{atomic_write, require_exists, sha256_hex};

#[derive(Debug, Clone, Args)]
pub struct TrainArgs {
    /// Prepared data directory (contains train.jsonl)
    #[arg(long, env = "DM_DATA_DIR", value_name = "DIR")]
    pub data: PathBuf,
    /// Feature configuration: l, la, or lac
    #[arg(long)]
    pub mode: Mode,
    /// Word-vector table in text format
    #[arg(long, value_name = "FILE")]
    pub embeddings: Option<PathBuf>,
    /// Precomputed unit vectors in JSON lines
    #[arg(long, value_name = "FILE")]
    pub precomputed: Option<PathBuf>,
    /// Number of boosting rounds
    #[arg(long, default_value_t = 100)]
    pub trees: usize,
    /// Maximum tree depth
    #[arg(long, default_value_t = 3)]
    pub depth: usize,
    /// Learning rate eta
    #[arg(long, default_value_t = 0.1)]
    pub eta: f64,
    /// L2 regularization lambda
    #[arg(long, default_value_t = 1.0)]
    pub reg_lambda: f64,
    /// Minimum split gain gamma
    #[arg(long, default_value_t = 0.0)]
    pub gamma: f64,
    /// Minimum hessian sum per child
    #[arg(long, default_value_t = 1.0)]
    pub min_child_weight: f64,
    /// Run directory for model.json and record.json
    #[arg(long, value_name = "DIR")]
    pub out: PathBuf,
    /// Also dump the training feature matrix in the binary format
    #[arg(long, value_name = "FILE")]
    pub dump_features: Option<PathBuf>,
    /// Also dump the training feature matrix as CSV
    #[arg(long, value_name = "FILE")]
    pub dump_features_csv: Option<PathBuf>,
}

impl TrainArgs {
    pub fn params(&self) -> GbdtParams {
        GbdtParams {
            num_trees: self.trees,
            max_depth: self.depth,
            learning_rate: self.eta,
            reg_lambda: self.reg_lambda,
            gamma: self.gamma,
            min_child_weight: self.min_child_weight,
            base_margin: 0.0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct TrainSummary {
    pub out: PathBuf,
    pub record: ExperimentRecord,
    pub model_path: PathBuf,
    pub train_rows: usize,
    pub feature_columns: usize,
}

pub fn run(args: &TrainArgs) -> Result<TrainSummary> {
    let train_path = args.data.join("train.jsonl");
    require_exists(&train_path)?;
    let spec = resolve_spec(args.embeddings.as_deref(), args.precomputed.as_deref())?;
    let provider = load_provider(&spec)?;

    let examples = read_examples_jsonl(&train_path)
        .with_context(|| format!("reading {}", train_path.display()))?;
    let set = ExampleSet::new(examples, SplitTag::Train)?;
    let config = FeatureConfig {
        mode: args.mode,
        dim: metaphor_core::embeddings::EmbeddingProvider::dim(&provider),
    };
    let matrix = build_matrix(&set, &config, &provider).context("building features")?;

    let params = args.params();
    let model = train_gbdt(&matrix, &params).context("training")?;

    let mut inputs = BTreeMap::new();
    inputs.insert("train.jsonl".to_string(), sha256_hex(&train_path)?);
    inputs.insert(
        format!("provider:{}", spec.path.display()),
        sha256_hex(&spec.path)?,
    );
    let record = ExperimentRecord::new(
        args.mode,
        spec,
        params,
        inputs,
        matrix.n_rows(),
        config.dim,
        matrix.n_cols(),
    );

    std::fs::create_dir_all(&args.out)?;
    let model_path = args.out.join(MODEL_FILE);
    atomic_write(&model_path, &model.to_json_bytes()?)?;
    atomic_write(&args.out.join(RECORD_FILE), record.to_json()?.as_bytes())?;

    if let Some(path) = &args.dump_features {
        let mut buf = Vec::new();
        matrix.write_binary(&mut buf)?;
        atomic_write(path, &buf)?;
    }
    if let Some(path) = &args.dump_features_csv {
        let mut buf = Vec::new();
        matrix.write_csv(&mut buf)?;
        atomic_write(path, &buf)?;
    }

    println!(
        "trained {} mode {} on {} rows x {} columns ({} trees, depth {}, eta {}) -> {}",
        record.run_id,
        args.mode,
        matrix.n_rows(),
        matrix.n_cols(),
        args.trees,
        args.depth,
        args.eta,
        args.out.display()
    );
    Ok(TrainSummary {
        out: args.out.clone(),
        train_rows: matrix.n_rows(),
        feature_columns: matrix.n_cols(),
        model_path,
        record,
    })
}
