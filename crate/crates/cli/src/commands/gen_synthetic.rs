//! `gen-synthetic`: write a synthetic dataset whose label is carried by
//! a context-only cue token.

use std::path::PathBuf;

use anyhow::Result;
use clap::Args;

use metaphor_core::corpus::write_examples_jsonl;
use metaphor_core::synth::{generate, SynthConfig};

use crate::util::atomic_write;

#[derive(Debug, Clone, Args)]
pub struct GenSyntheticArgs {
    /// Directory to write train/dev/test JSONL files and embeddings.txt
    #[arg(long, value_name = "DIR")]
    pub out: PathBuf,
    #[arg(long, default_value_t = 2000)]
    pub train_size: usize,
    #[arg(long, default_value_t = 0)]
    pub dev_size: usize,
    #[arg(long, default_value_t = 500)]
    pub test_size: usize,
    /// Per-slot embedding dimension
    #[arg(long, default_value_t = 10)]
    pub dim: usize,
    /// Label-noise probability
    #[arg(long, default_value_t = 0.1)]
    pub noise: f64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub struct GenSyntheticSummary {
    pub out: PathBuf,
    pub train: usize,
    pub dev: usize,
    pub test: usize,
    pub embeddings: PathBuf,
}

pub fn run(args: &GenSyntheticArgs) -> Result<GenSyntheticSummary> {
    let config = SynthConfig {
        train_size: args.train_size,
        dev_size: args.dev_size,
        test_size: args.test_size,
        dim: args.dim,
        noise: args.noise,
        seed: args.seed,
        ..SynthConfig::default()
    };
    let data = generate(&config);

    std::fs::create_dir_all(&args.out)?;
    for (name, set) in [
        ("train.jsonl", &data.train),
        ("dev.jsonl", &data.dev),
        ("test.jsonl", &data.test),
    ] {
        let mut buf = Vec::new();
        write_examples_jsonl(&mut buf, &set.examples)?;
        atomic_write(&args.out.join(name), &buf)?;
    }
    let mut table_buf = Vec::new();
    data.table.write_text(&mut table_buf)?;
    let embeddings = args.out.join("embeddings.txt");
    atomic_write(&embeddings, &table_buf)?;

    let summary = GenSyntheticSummary {
        out: args.out.clone(),
        train: data.train.len(),
        dev: data.dev.len(),
        test: data.test.len(),
        embeddings,
    };
    println!(
        "generated {} train / {} dev / {} test examples (dim {}, noise {}, seed {}) in {}",
        summary.train,
        summary.dev,
        summary.test,
        args.dim,
        args.noise,
        args.seed,
        args.out.display()
    );
    Ok(summary)
}
