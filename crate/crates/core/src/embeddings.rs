//! Dense vector representations for words and token sequences.
//!
//! Two providers cover the pipeline's needs: a word-vector table in the
//! plain text format (`word v1 v2 ... vd` per line) with bag-of-words
//! averaging for documents, and a table of externally precomputed
//! vectors keyed by unit id for embedding methods that run outside this
//! artifact.

use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use indexmap::IndexMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EmbeddingError {
    #[error("io error reading {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("vector file is empty")]
    EmptyTable,
    #[error("line {line}: expected {expected} vector components, found {found}")]
    DimMismatch {
        line: u64,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: {msg}")]
    Parse { line: u64, msg: String },
    #[error("table dimension is {found}, expected {expected}")]
    UnexpectedDim { expected: usize, found: usize },
    #[error("duplicate unit id {id:?}")]
    DuplicateUnitId { id: String },
    #[error("no precomputed vector for unit {unit_id:?}")]
    MissingUnit { unit_id: String },
}

/// A source of fixed-dimension embeddings for words and documents.
///
/// `unit_id` identifies the slot being embedded (`<example_id>:<slot>`)
/// and is only consulted by providers backed by precomputed vectors;
/// word-table providers embed the text itself.
pub trait EmbeddingProvider: Sync {
    fn dim(&self) -> usize;

    fn embed_word(&self, word: &str, unit_id: &str) -> Result<Vec<f64>, EmbeddingError>;

    fn embed_document(&self, tokens: &[String], unit_id: &str) -> Result<Vec<f64>, EmbeddingError>;
}

/// A word → vector table with a derived out-of-vocabulary vector.
///
/// The OOV vector is the component-wise mean of all entries, recomputed
/// on load.
#[derive(Debug, Clone)]
pub struct VectorTable {
    dim: usize,
    entries: IndexMap<String, Vec<f64>>,
    oov: Vec<f64>,
}

impl VectorTable {
    /// Loads a text-format table, inferring the dimension from the first
    /// line (or validating it against `expected_dim`).
    pub fn load(path: &Path, expected_dim: Option<usize>) -> Result<Self, EmbeddingError> {
        let file = File::open(path).map_err(|e| EmbeddingError::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        let reader = BufReader::new(file);
        let mut entries: IndexMap<String, Vec<f64>> = IndexMap::new();
        let mut dim: Option<usize> = None;
        for (idx, line) in reader.lines().enumerate() {
            let line_no = idx as u64 + 1;
            let line = line.map_err(|e| EmbeddingError::Io {
                path: path.display().to_string(),
                source: e,
            })?;
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split(' ');
            let word = parts.next().unwrap_or_default();
            if word.is_empty() {
                return Err(EmbeddingError::Parse {
                    line: line_no,
                    msg: "missing word field".to_string(),
                });
            }
            let mut vector = Vec::with_capacity(dim.unwrap_or(0));
            for part in parts.filter(|p| !p.is_empty()) {
                let value: f64 = part.parse().map_err(|_| EmbeddingError::Parse {
                    line: line_no,
                    msg: format!("bad float {part:?}"),
                })?;
                vector.push(value);
            }
            match dim {
                None => {
                    if vector.is_empty() {
                        return Err(EmbeddingError::Parse {
                            line: line_no,
                            msg: "no vector components".to_string(),
                        });
                    }
                    dim = Some(vector.len());
                }
                Some(d) if vector.len() != d => {
                    return Err(EmbeddingError::DimMismatch {
                        line: line_no,
                        expected: d,
                        found: vector.len(),
                    });
                }
                Some(_) => {}
            }
            // last occurrence wins; insertion order is preserved so the
            // OOV mean stays deterministic
            entries.insert(word.to_string(), vector);
        }
        let dim = dim.ok_or(EmbeddingError::EmptyTable)?;
        if let Some(expected) = expected_dim {
            if dim != expected {
                return Err(EmbeddingError::UnexpectedDim {
                    expected,
                    found: dim,
                });
            }
        }
        Ok(Self::from_parts(dim, entries))
    }

    /// Builds a table from in-memory entries; all vectors must share one
    /// length.
    pub fn from_entries<I, S>(entries: I) -> Result<Self, EmbeddingError>
    where
        I: IntoIterator<Item = (S, Vec<f64>)>,
        S: Into<String>,
    {
        let mut map = IndexMap::new();
        let mut dim = None;
        for (idx, (word, vector)) in entries.into_iter().enumerate() {
            match dim {
                None => dim = Some(vector.len()),
                Some(d) if vector.len() != d => {
                    return Err(EmbeddingError::DimMismatch {
                        line: idx as u64 + 1,
                        expected: d,
                        found: vector.len(),
                    });
                }
                Some(_) => {}
            }
            map.insert(word.into(), vector);
        }
        let dim = dim.ok_or(EmbeddingError::EmptyTable)?;
        Ok(Self::from_parts(dim, map))
    }

    fn from_parts(dim: usize, entries: IndexMap<String, Vec<f64>>) -> Self {
        let mut oov = vec![0.0; dim];
        for vector in entries.values() {
            for (acc, v) in oov.iter_mut().zip(vector) {
                *acc += v;
            }
        }
        let n = entries.len() as f64;
        for acc in &mut oov {
            *acc /= n;
        }
        VectorTable { dim, entries, oov }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The out-of-vocabulary vector: the mean of all entries.
    pub fn oov(&self) -> &[f64] {
        &self.oov
    }

    /// Looks up a word: lowercased form first, then original casing,
    /// then the OOV vector. Total function.
    pub fn word_vector(&self, word: &str) -> &[f64] {
        let lowered = word.to_lowercase();
        if let Some(v) = self.entries.get(lowered.as_str()) {
            return v;
        }
        if let Some(v) = self.entries.get(word) {
            return v;
        }
        &self.oov
    }

    /// Mean of the word vectors of `tokens`; the empty document is the
    /// zero vector (no signal), not the OOV vector.
    pub fn document_vector(&self, tokens: &[String]) -> Vec<f64> {
        let mut acc = vec![0.0; self.dim];
        if tokens.is_empty() {
            return acc;
        }
        for token in tokens {
            for (a, v) in acc.iter_mut().zip(self.word_vector(token)) {
                *a += v;
            }
        }
        let n = tokens.len() as f64;
        for a in &mut acc {
            *a /= n;
        }
        acc
    }

    /// Writes the table in the text format read by [`VectorTable::load`].
    pub fn write_text<W: Write>(&self, mut writer: W) -> std::io::Result<()> {
        for (word, vector) in &self.entries {
            write!(writer, "{word}")?;
            for v in vector {
                write!(writer, " {v}")?;
            }
            writeln!(writer)?;
        }
        Ok(())
    }
}

impl EmbeddingProvider for VectorTable {
    fn dim(&self) -> usize {
        self.dim
    }

    fn embed_word(&self, word: &str, _unit_id: &str) -> Result<Vec<f64>, EmbeddingError> {
        Ok(self.word_vector(word).to_vec())
    }

    fn embed_document(&self, tokens: &[String], _unit_id: &str) -> Result<Vec<f64>, EmbeddingError> {
        Ok(self.document_vector(tokens))
    }
}

/// Externally computed vectors keyed by unit id, loaded from JSON lines
/// of the form `{"id": "...", "vector": [...]}`.
///
/// A lookup of an absent id is a hard error rather than a zero vector: a
/// silent zero would corrupt an entire configuration invisibly.
#[derive(Debug, Clone)]
pub struct PrecomputedVectors {
    dim: usize,
    entries: IndexMap<String, Vec<f64>>,
}

impl PrecomputedVectors {
    pub fn load(path: &Path) -> Result<Self, EmbeddingError> {
        let file = File::open(path).map_err(|e| EmbeddingError::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        let reader = BufReader::new(file);
        let mut entries: IndexMap<String, Vec<f64>> = IndexMap::new();
        let mut dim = None;
        for (idx, line) in reader.lines().enumerate() {
            let line_no = idx as u64 + 1;
            let line = line.map_err(|e| EmbeddingError::Io {
                path: path.display().to_string(),
                source: e,
            })?;
            if line.trim().is_empty() {
                continue;
            }
            #[derive(serde::Deserialize)]
            struct Record {
                id: String,
                vector: Vec<f64>,
            }
            let rec: Record = serde_json::from_str(&line).map_err(|e| EmbeddingError::Parse {
                line: line_no,
                msg: e.to_string(),
            })?;
            match dim {
                None => dim = Some(rec.vector.len()),
                Some(d) if rec.vector.len() != d => {
                    return Err(EmbeddingError::DimMismatch {
                        line: line_no,
                        expected: d,
                        found: rec.vector.len(),
                    });
                }
                Some(_) => {}
            }
            if entries.insert(rec.id.clone(), rec.vector).is_some() {
                return Err(EmbeddingError::DuplicateUnitId { id: rec.id });
            }
        }
        let dim = dim.ok_or(EmbeddingError::EmptyTable)?;
        Ok(PrecomputedVectors { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, unit_id: &str) -> Result<&[f64], EmbeddingError> {
        self.entries
            .get(unit_id)
            .map(Vec::as_slice)
            .ok_or_else(|| EmbeddingError::MissingUnit {
                unit_id: unit_id.to_string(),
            })
    }
}

impl EmbeddingProvider for PrecomputedVectors {
    fn dim(&self) -> usize {
        self.dim
    }

    fn embed_word(&self, _word: &str, unit_id: &str) -> Result<Vec<f64>, EmbeddingError> {
        self.get(unit_id).map(<[f64]>::to_vec)
    }

    fn embed_document(&self, _tokens: &[String], unit_id: &str) -> Result<Vec<f64>, EmbeddingError> {
        self.get(unit_id).map(<[f64]>::to_vec)
    }
}
