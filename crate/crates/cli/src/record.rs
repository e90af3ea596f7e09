//! Experiment records: a config snapshot plus input hashes, written
//! next to every trained model.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

use metaphor_core::features::Mode;
use metaphor_core::gbdt::GbdtParams;

use crate::provider::ProviderSpec;
use crate::util::sha256_hex_bytes;

pub const RECORD_FILE: &str = "record.json";
pub const MODEL_FILE: &str = "model.json";

/// Snapshot of one training run. The run id is a content hash of the
/// configuration and input hashes, so two runs over identical inputs
/// share an id and differing inputs are immediately visible.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub run_id: String,
    pub created_utc: String,
    pub mode: Mode,
    pub provider: ProviderSpec,
    pub params: GbdtParams,
    /// SHA-256 of every input file that shaped the model.
    pub input_sha256: BTreeMap<String, String>,
    pub train_rows: usize,
    pub slot_dim: usize,
    pub feature_columns: usize,
}

impl ExperimentRecord {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        mode: Mode,
        provider: ProviderSpec,
        params: GbdtParams,
        input_sha256: BTreeMap<String, String>,
        train_rows: usize,
        slot_dim: usize,
        feature_columns: usize,
    ) -> Self {
        let fingerprint = serde_json::json!({
            "mode": mode,
            "provider_kind": provider.kind,
            "params": params,
            "inputs": input_sha256,
        });
        let run_id = sha256_hex_bytes(fingerprint.to_string().as_bytes())[..16].to_string();
        ExperimentRecord {
            run_id,
            created_utc: chrono::Utc::now().to_rfc3339(),
            mode,
            provider,
            params,
            input_sha256,
            train_rows,
            slot_dim,
            feature_columns,
        }
    }

    pub fn load(run_dir: &Path) -> Result<Self> {
        let path = run_dir.join(RECORD_FILE);
        let text = std::fs::read_to_string(&path)
            .with_context(|| format!("reading run record {}", path.display()))?;
        serde_json::from_str(&text)
            .with_context(|| format!("parsing run record {}", path.display()))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

pub fn predictions_file(split: &str) -> String {
    format!("predictions-{split}.jsonl")
}

pub fn eval_file(split: &str) -> String {
    format!("eval-{split}.json")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::provider::ProviderKind;

    fn record() -> ExperimentRecord {
        let mut inputs = BTreeMap::new();
        inputs.insert("train.jsonl".to_string(), "aa".to_string());
        ExperimentRecord::new(
            Mode::Lac,
            ProviderSpec {
                kind: ProviderKind::WordTable,
                path: "emb.txt".into(),
            },
            GbdtParams::default(),
            inputs,
            10,
            4,
            16,
        )
    }

    #[test]
    fn run_id_depends_on_config_not_time() {
        let a = record();
        let b = record();
        assert_eq!(a.run_id, b.run_id);
        let mut other_inputs = BTreeMap::new();
        other_inputs.insert("train.jsonl".to_string(), "bb".to_string());
        let c = ExperimentRecord::new(
            a.mode,
            a.provider.clone(),
            a.params.clone(),
            other_inputs,
            10,
            4,
            16,
        );
        assert_ne!(a.run_id, c.run_id);
    }

    #[test]
    fn record_round_trips_through_json() {
        let rec = record();
        let json = rec.to_json().unwrap();
        let back: ExperimentRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back, rec);
    }
}
