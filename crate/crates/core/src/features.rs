//! Fixed-layout feature assembly for the L, LA, and LAC configurations.
//!
//! Every feature vector spans four slots of `dim` components each, in
//! the order `[lemma | subject | object | context]`. Slots excluded by
//! the active mode, and slots for absent arguments, are all-zero. All
//! modes therefore emit the same width, which keeps matrices across
//! configurations directly comparable; the classifier is tree-based, so
//! constant-zero columns are inert.

use std::fmt;
use std::io::{Read, Write};
use std::ops::Range;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{Example, ExampleSet, Genre};
use crate::embeddings::{EmbeddingError, EmbeddingProvider};

/// Number of slots in a feature vector.
pub const SLOT_COUNT: usize = 4;

const BINARY_MAGIC: &[u8; 4] = b"FMTX";
const BINARY_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum FeatureError {
    #[error("provider dimension {provider} does not match configured slot dimension {config}")]
    DimMismatch { provider: usize, config: usize },
    #[error("failed to embed example {id}: {source}")]
    Embed {
        id: String,
        #[source]
        source: EmbeddingError,
    },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("bad matrix file: {0}")]
    BadMatrixFile(String),
}

/// Feature configuration: lemma only, lemma + arguments, or lemma +
/// arguments + context.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    L,
    La,
    Lac,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::L, Mode::La, Mode::Lac];

    pub fn uses_arguments(self) -> bool {
        matches!(self, Mode::La | Mode::Lac)
    }

    pub fn uses_context(self) -> bool {
        matches!(self, Mode::Lac)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::L => "L",
            Mode::La => "LA",
            Mode::Lac => "LAC",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "l" => Ok(Mode::L),
            "la" => Ok(Mode::La),
            "lac" => Ok(Mode::Lac),
            _ => Err(format!("unknown mode {s:?}, expected l, la, or lac")),
        }
    }
}

/// One slot of the fixed feature layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    Lemma,
    Subject,
    Object,
    Context,
}

impl Slot {
    pub const ALL: [Slot; SLOT_COUNT] = [Slot::Lemma, Slot::Subject, Slot::Object, Slot::Context];

    pub fn index(self) -> usize {
        match self {
            Slot::Lemma => 0,
            Slot::Subject => 1,
            Slot::Object => 2,
            Slot::Context => 3,
        }
    }

    /// Slot name used in precomputed-vector unit ids.
    pub fn key(self) -> &'static str {
        match self {
            Slot::Lemma => "lemma",
            Slot::Subject => "subject",
            Slot::Object => "object",
            Slot::Context => "context",
        }
    }

    /// Column range of this slot for a given per-slot dimension.
    pub fn range(self, dim: usize) -> Range<usize> {
        let start = self.index() * dim;
        start..start + dim
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FeatureConfig {
    pub mode: Mode,
    /// Per-slot dimensionality; the full vector is `4 * dim` wide.
    pub dim: usize,
}

/// Row-major feature matrix with per-row labels, ids, and genres.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    values: Vec<f64>,
    n_cols: usize,
    pub labels: Vec<u8>,
    pub ids: Vec<String>,
    pub genres: Vec<Genre>,
}

impl FeatureMatrix {
    pub fn new(n_cols: usize) -> Self {
        FeatureMatrix {
            values: Vec::new(),
            n_cols,
            labels: Vec::new(),
            ids: Vec::new(),
            genres: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<f64>, label: u8, id: String, genre: Genre) {
        debug_assert_eq!(row.len(), self.n_cols);
        self.values.extend(row);
        self.labels.push(label);
        self.ids.push(id);
        self.genres.push(genre);
    }

    pub fn n_rows(&self) -> usize {
        self.labels.len()
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.n_cols..(i + 1) * self.n_cols]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Zeroes the columns of one slot in every row. Used to relate the
    /// nested L/LA/LAC layouts.
    pub fn zero_slot(&mut self, slot: Slot, dim: usize) {
        let range = slot.range(dim);
        for r in 0..self.n_rows() {
            let base = r * self.n_cols;
            for c in range.clone() {
                self.values[base + c] = 0.0;
            }
        }
    }

    /// Writes the values in the columnar binary format: magic, version,
    /// row count, column count, then row-major little-endian `f32`s.
    pub fn write_binary<W: Write>(&self, mut writer: W) -> Result<(), FeatureError> {
        writer.write_all(BINARY_MAGIC)?;
        writer.write_all(&BINARY_VERSION.to_le_bytes())?;
        writer.write_all(&(self.n_rows() as u64).to_le_bytes())?;
        writer.write_all(&(self.n_cols as u64).to_le_bytes())?;
        for v in &self.values {
            writer.write_all(&(*v as f32).to_le_bytes())?;
        }
        Ok(())
    }

    /// Writes rows as CSV for debugging, with id, label, and genre
    /// leading the feature columns.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<(), FeatureError> {
        let mut w = csv::Writer::from_writer(writer);
        let mut header = vec!["id".to_string(), "label".to_string(), "genre".to_string()];
        header.extend((0..self.n_cols).map(|c| format!("f{c}")));
        w.write_record(&header)
            .map_err(|e| FeatureError::BadMatrixFile(e.to_string()))?;
        for i in 0..self.n_rows() {
            let mut record = vec![
                self.ids[i].clone(),
                self.labels[i].to_string(),
                self.genres[i].to_string(),
            ];
            record.extend(self.row(i).iter().map(|v| v.to_string()));
            w.write_record(&record)
                .map_err(|e| FeatureError::BadMatrixFile(e.to_string()))?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Values read back from the columnar binary format.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixData {
    pub n_rows: usize,
    pub n_cols: usize,
    /// Row-major values, widened back to `f64`.
    pub values: Vec<f64>,
}

/// Reads a matrix written by [`FeatureMatrix::write_binary`].
pub fn read_binary_matrix<R: Read>(mut reader: R) -> Result<MatrixData, FeatureError> {
    let mut magic = [0u8; 4];
    reader.read_exact(&mut magic)?;
    if &magic != BINARY_MAGIC {
        return Err(FeatureError::BadMatrixFile(format!(
            "bad magic {magic:?}"
        )));
    }
    let mut word = [0u8; 4];
    reader.read_exact(&mut word)?;
    let version = u32::from_le_bytes(word);
    if version != BINARY_VERSION {
        return Err(FeatureError::BadMatrixFile(format!(
            "unsupported version {version}"
        )));
    }
    let mut long = [0u8; 8];
    reader.read_exact(&mut long)?;
    let n_rows = u64::from_le_bytes(long) as usize;
    reader.read_exact(&mut long)?;
    let n_cols = u64::from_le_bytes(long) as usize;
    let mut values = Vec::with_capacity(n_rows * n_cols);
    let mut buf = [0u8; 4];
    for _ in 0..n_rows * n_cols {
        reader.read_exact(&mut buf).map_err(|_| {
            FeatureError::BadMatrixFile("truncated value section".to_string())
        })?;
        values.push(f32::from_le_bytes(buf) as f64);
    }
    Ok(MatrixData {
        n_rows,
        n_cols,
        values,
    })
}

fn unit_id(example: &Example, slot: Slot) -> String {
    format!("{}:{}", example.id, slot.key())
}

/// Assembles one feature vector.
///
/// The lemma slot is always populated. Subject and object slots are
/// populated in LA/LAC when the argument is present (embedding its head
/// lemma), the context slot only in LAC. Everything else stays zero.
pub fn assemble<P: EmbeddingProvider + ?Sized>(
    example: &Example,
    config: &FeatureConfig,
    provider: &P,
) -> Result<Vec<f64>, FeatureError> {
    if provider.dim() != config.dim {
        return Err(FeatureError::DimMismatch {
            provider: provider.dim(),
            config: config.dim,
        });
    }
    let dim = config.dim;
    let mut values = vec![0.0; SLOT_COUNT * dim];
    let embed = |word: &str, slot: Slot| {
        provider
            .embed_word(word, &unit_id(example, slot))
            .map_err(|source| FeatureError::Embed {
                id: example.id.clone(),
                source,
            })
    };

    values[Slot::Lemma.range(dim)].copy_from_slice(&embed(&example.verb_lemma, Slot::Lemma)?);
    if config.mode.uses_arguments() {
        if let Some(subject) = &example.subject {
            values[Slot::Subject.range(dim)]
                .copy_from_slice(&embed(&subject.head_lemma, Slot::Subject)?);
        }
        if let Some(object) = &example.object {
            values[Slot::Object.range(dim)]
                .copy_from_slice(&embed(&object.head_lemma, Slot::Object)?);
        }
    }
    if config.mode.uses_context() && !example.context_tokens.is_empty() {
        let context = provider
            .embed_document(&example.context_tokens, &unit_id(example, Slot::Context))
            .map_err(|source| FeatureError::Embed {
                id: example.id.clone(),
                source,
            })?;
        values[Slot::Context.range(dim)].copy_from_slice(&context);
    }
    Ok(values)
}

/// Builds the feature matrix for a whole example set.
///
/// Rows are assembled in parallel but emitted in example order, with
/// labels, ids, and genres carried through.
pub fn build_matrix<P: EmbeddingProvider + ?Sized>(
    set: &ExampleSet,
    config: &FeatureConfig,
    provider: &P,
) -> Result<FeatureMatrix, FeatureError> {
    let rows: Vec<Vec<f64>> = set
        .examples
        .par_iter()
        .map(|ex| assemble(ex, config, provider))
        .collect::<Result<_, _>>()?;
    let mut matrix = FeatureMatrix::new(SLOT_COUNT * config.dim);
    for (row, ex) in rows.into_iter().zip(&set.examples) {
        matrix.push_row(row, ex.label, ex.id.clone(), ex.genre);
    }
    Ok(matrix)
}
