//! Gradient-boosted decision trees for binary classification with
//! logistic loss and second-order (Newton) split optimization.
//!
//! Training is exact greedy and fully deterministic: no row or column
//! subsampling, thresholds at midpoints of consecutive distinct feature
//! values, ties broken by lowest feature index then lowest threshold.
//! Leaf weights are stored unscaled; the learning rate is applied when
//! margins are accumulated, which makes it a pure post-hoc scaling.

mod train;

pub use train::{best_split, leaf_weight, logistic_grad_hess, train, SplitCandidate, SplitSearch};

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

const MODEL_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum GbdtError {
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error("training matrix is empty")]
    EmptyMatrix,
    #[error("label {value} at row {row} is not binary")]
    NonBinaryLabel { row: usize, value: u8 },
    #[error("row has {found} features, model expects {expected}")]
    RowWidth { expected: usize, found: usize },
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed model file: {0}")]
    Malformed(String),
    #[error("unsupported model format version {found} (expected {MODEL_FORMAT_VERSION})")]
    Version { found: u32 },
}

/// Boosting parameters. Defaults are the classifier settings used
/// throughout this project: 100 trees of depth 3 with learning rate
/// 0.1, L2 regularization 1.0, no gain threshold, minimum child hessian
/// weight 1.0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GbdtParams {
    pub num_trees: usize,
    pub max_depth: usize,
    /// Shrinkage eta applied to every leaf's contribution.
    pub learning_rate: f64,
    /// L2 regularization lambda in gain and leaf weights.
    pub reg_lambda: f64,
    /// Minimum gain gamma a split must clear.
    pub gamma: f64,
    /// Minimum hessian sum allowed in a child.
    pub min_child_weight: f64,
    /// Initial margin before any tree contributes (0 = probability 0.5).
    pub base_margin: f64,
}

impl Default for GbdtParams {
    fn default() -> Self {
        GbdtParams {
            num_trees: 100,
            max_depth: 3,
            learning_rate: 0.1,
            reg_lambda: 1.0,
            gamma: 0.0,
            min_child_weight: 1.0,
            base_margin: 0.0,
        }
    }
}

impl GbdtParams {
    pub fn validate(&self) -> Result<(), GbdtError> {
        if self.num_trees < 1 {
            return Err(GbdtError::BadParams("num_trees must be >= 1".into()));
        }
        if !(self.learning_rate > 0.0 && self.learning_rate <= 1.0) {
            return Err(GbdtError::BadParams(format!(
                "learning_rate {} must be in (0, 1]",
                self.learning_rate
            )));
        }
        if !(self.reg_lambda >= 0.0) {
            return Err(GbdtError::BadParams(format!(
                "reg_lambda {} must be >= 0",
                self.reg_lambda
            )));
        }
        if !(self.gamma >= 0.0) {
            return Err(GbdtError::BadParams(format!(
                "gamma {} must be >= 0",
                self.gamma
            )));
        }
        if !(self.min_child_weight >= 0.0) {
            return Err(GbdtError::BadParams(format!(
                "min_child_weight {} must be >= 0",
                self.min_child_weight
            )));
        }
        Ok(())
    }
}

/// A regression tree node. Rows with `value < threshold` go left,
/// `value >= threshold` go right.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TreeNode {
    Split {
        #[serde(rename = "f")]
        feature_index: usize,
        #[serde(rename = "t")]
        threshold: f64,
        #[serde(rename = "l")]
        left: Box<TreeNode>,
        #[serde(rename = "r")]
        right: Box<TreeNode>,
    },
    Leaf {
        #[serde(rename = "w")]
        weight: f64,
    },
}

impl TreeNode {
    /// Unscaled weight of the leaf this row falls into.
    pub fn leaf_weight_for(&self, row: &[f64]) -> f64 {
        let mut node = self;
        loop {
            match node {
                TreeNode::Leaf { weight } => return *weight,
                TreeNode::Split {
                    feature_index,
                    threshold,
                    left,
                    right,
                } => {
                    node = if row[*feature_index] < *threshold {
                        left
                    } else {
                        right
                    };
                }
            }
        }
    }

    /// Number of split edges on the longest root-to-leaf path.
    pub fn depth(&self) -> usize {
        match self {
            TreeNode::Leaf { .. } => 0,
            TreeNode::Split { left, right, .. } => 1 + left.depth().max(right.depth()),
        }
    }

    /// Largest feature index referenced anywhere in the tree.
    pub fn max_feature_index(&self) -> Option<usize> {
        match self {
            TreeNode::Leaf { .. } => None,
            TreeNode::Split {
                feature_index,
                left,
                right,
                ..
            } => {
                let mut max = *feature_index;
                if let Some(l) = left.max_feature_index() {
                    max = max.max(l);
                }
                if let Some(r) = right.max_feature_index() {
                    max = max.max(r);
                }
                Some(max)
            }
        }
    }
}

/// An ordered ensemble of regression trees plus training parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GbdtModel {
    pub params: GbdtParams,
    pub feature_count: usize,
    pub trees: Vec<TreeNode>,
}

impl GbdtModel {
    /// An untrained model: no trees, margin equal to `base_margin`.
    pub fn new(params: GbdtParams, feature_count: usize) -> Self {
        GbdtModel {
            params,
            feature_count,
            trees: Vec::new(),
        }
    }

    fn check_row(&self, row: &[f64]) -> Result<(), GbdtError> {
        if row.len() != self.feature_count {
            return Err(GbdtError::RowWidth {
                expected: self.feature_count,
                found: row.len(),
            });
        }
        Ok(())
    }

    /// Raw additive margin: base margin plus the learning-rate-scaled
    /// sum of leaf weights along each tree's path.
    pub fn predict_margin(&self, row: &[f64]) -> Result<f64, GbdtError> {
        self.check_row(row)?;
        let mut margin = self.params.base_margin;
        for tree in &self.trees {
            margin += self.params.learning_rate * tree.leaf_weight_for(row);
        }
        Ok(margin)
    }

    pub fn predict_proba(&self, row: &[f64]) -> Result<f64, GbdtError> {
        Ok(sigmoid(self.predict_margin(row)?))
    }

    /// Predicted class: 1 when the probability is at least 0.5.
    pub fn classify(&self, row: &[f64]) -> Result<u8, GbdtError> {
        Ok(if self.predict_proba(row)? >= 0.5 { 1 } else { 0 })
    }

    /// The versioned on-disk representation, as JSON bytes. Numbers are
    /// serialized with full round-trip precision, so a reloaded model
    /// produces bit-identical margins.
    pub fn to_json_bytes(&self) -> Result<Vec<u8>, GbdtError> {
        let envelope = ModelFile {
            format_version: MODEL_FORMAT_VERSION,
            model: self.clone(),
        };
        serde_json::to_vec(&envelope).map_err(|e| GbdtError::Malformed(e.to_string()))
    }

    pub fn save(&self, path: &Path) -> Result<(), GbdtError> {
        let file = File::create(path).map_err(|e| GbdtError::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        let mut writer = BufWriter::new(file);
        let bytes = self.to_json_bytes()?;
        writer.write_all(&bytes).and_then(|_| writer.flush()).map_err(|e| GbdtError::Io {
            path: path.display().to_string(),
            source: e,
        })
    }

    pub fn load(path: &Path) -> Result<Self, GbdtError> {
        let file = File::open(path).map_err(|e| GbdtError::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        let envelope: ModelFile = serde_json::from_reader(BufReader::new(file))
            .map_err(|e| GbdtError::Malformed(e.to_string()))?;
        if envelope.format_version != MODEL_FORMAT_VERSION {
            return Err(GbdtError::Version {
                found: envelope.format_version,
            });
        }
        let model = envelope.model;
        for tree in &model.trees {
            if let Some(max) = tree.max_feature_index() {
                if max >= model.feature_count {
                    return Err(GbdtError::Malformed(format!(
                        "tree references feature {max}, feature_count is {}",
                        model.feature_count
                    )));
                }
            }
        }
        Ok(model)
    }
}

#[derive(Serialize, Deserialize)]
struct ModelFile {
    format_version: u32,
    #[serde(flatten)]
    model: GbdtModel,
}

pub fn sigmoid(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}
