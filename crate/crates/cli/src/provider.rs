//! Embedding-provider selection shared by train, predict, and evaluate.

use std::path::{Path, PathBuf};

use anyhow::{bail, Result};
use serde::{Deserialize, Serialize};

use metaphor_core::embeddings::{
    EmbeddingError, EmbeddingProvider, PrecomputedVectors, VectorTable,
};

use crate::util::require_exists;

/// Which kind of provider a run was trained with, and where its file
/// lives; recorded so later commands can rebuild identical features.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProviderSpec {
    pub kind: ProviderKind,
    pub path: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProviderKind {
    WordTable,
    Precomputed,
}

pub enum Provider {
    Table(VectorTable),
    Precomputed(PrecomputedVectors),
}

impl EmbeddingProvider for Provider {
    fn dim(&self) -> usize {
        match self {
            Provider::Table(t) => t.dim(),
            Provider::Precomputed(p) => p.dim(),
        }
    }

    fn embed_word(&self, word: &str, unit_id: &str) -> Result<Vec<f64>, EmbeddingError> {
        match self {
            Provider::Table(t) => t.embed_word(word, unit_id),
            Provider::Precomputed(p) => p.embed_word(word, unit_id),
        }
    }

    fn embed_document(
        &self,
        tokens: &[String],
        unit_id: &str,
    ) -> Result<Vec<f64>, EmbeddingError> {
        match self {
            Provider::Table(t) => t.embed_document(tokens, unit_id),
            Provider::Precomputed(p) => p.embed_document(tokens, unit_id),
        }
    }
}

/// Resolves the `--embeddings` / `--precomputed` pair into a spec;
/// exactly one must be given.
pub fn resolve_spec(
    embeddings: Option<&Path>,
    precomputed: Option<&Path>,
) -> Result<ProviderSpec> {
    match (embeddings, precomputed) {
        (Some(path), None) => Ok(ProviderSpec {
            kind: ProviderKind::WordTable,
            path: path.to_path_buf(),
        }),
        (None, Some(path)) => Ok(ProviderSpec {
            kind: ProviderKind::Precomputed,
            path: path.to_path_buf(),
        }),
        (None, None) => bail!("one of --embeddings or --precomputed is required"),
        (Some(_), Some(_)) => bail!("--embeddings and --precomputed are mutually exclusive"),
    }
}

pub fn load_provider(spec: &ProviderSpec) -> Result<Provider> {
    require_exists(&spec.path)?;
    Ok(match spec.kind {
        ProviderKind::WordTable => Provider::Table(VectorTable::load(&spec.path, None)?),
        ProviderKind::Precomputed => {
            Provider::Precomputed(PrecomputedVectors::load(&spec.path)?)
        }
    })
}
