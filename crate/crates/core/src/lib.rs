//! Metaphorical-verb classification from lemma, argument, and
//! discourse-context embeddings.
//!
//! The pipeline classifies individual verb usages as metaphorical or
//! literal. Each usage is represented by a fixed-layout feature vector
//! built from embeddings of the verb lemma, its syntactic subject and
//! direct object, and the surrounding paragraph, and fed into a
//! gradient-boosted decision tree classifier. Three feature
//! configurations are compared: lemma only (L), lemma + arguments (LA),
//! and lemma + arguments + context (LAC). Paired model comparisons use
//! the mid-p variant of McNemar's test.
//!
//! Modules follow the pipeline stages:
//!
//! * [`corpus`] — annotated examples, dependency parses, argument
//!   extraction, dev-set sampling.
//! * [`embeddings`] — word-vector tables and precomputed document
//!   vectors behind a common provider trait.
//! * [`features`] — L/LA/LAC feature-vector assembly and matrix
//!   serialization.
//! * [`gbdt`] — second-order gradient boosting with exact greedy split
//!   search.
//! * [`eval`] — precision/recall/F1, per-genre breakdowns, mid-p
//!   McNemar.
//! * [`report`] — aligned tables and machine-readable report structs.
//! * [`synth`] — synthetic corpus generator for end-to-end experiments
//!   without licensed data.

pub mod corpus;
pub mod embeddings;
pub mod eval;
pub mod features;
pub mod gbdt;
pub mod report;
pub mod synth;

pub use corpus::{
    extract_arguments, split_dev, ArgRelation, ArgumentSpan, CorpusError, Example, ExampleSet,
    Genre, GenreMap, ParsedSentence, ParsedToken, SplitTag,
};
pub use embeddings::{EmbeddingError, EmbeddingProvider, PrecomputedVectors, VectorTable};
pub use eval::{
    confusion, mcnemar_midp, metrics_by_genre, prf1, significance_stars, Confusion, EvalError,
    McNemarResult, Metrics, Stars,
};
pub use features::{assemble, build_matrix, FeatureConfig, FeatureError, FeatureMatrix, Mode, Slot};
pub use gbdt::{
    best_split, leaf_weight, logistic_grad_hess, train, GbdtError, GbdtModel, GbdtParams,
    SplitCandidate, TreeNode,
};
