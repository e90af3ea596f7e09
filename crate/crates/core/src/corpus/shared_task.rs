//! Shared-task CSV ingestion: example rows, paragraph contexts, and the
//! text-id-prefix genre map.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use super::{CorpusError, Example, ExampleSet, Genre, SplitTag};

const EXPECTED_HEADER: [&str; 5] = ["id", "sentence", "verb_index", "lemma", "label"];

/// Maps BNC text-id prefixes to genres.
///
/// Loaded from a JSON object like `{"a1": "News", "kb": "Conversation"}`.
/// Lookup picks the longest matching prefix, so specific text ids can
/// override broader families.
#[derive(Debug, Clone)]
pub struct GenreMap {
    // sorted by descending prefix length, then prefix, for deterministic lookup
    prefixes: Vec<(String, Genre)>,
}

impl GenreMap {
    pub fn load(path: &Path) -> Result<Self, CorpusError> {
        let text = std::fs::read_to_string(path).map_err(|e| CorpusError::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        let raw: HashMap<String, String> =
            serde_json::from_str(&text).map_err(|e| CorpusError::Json {
                line: 1,
                msg: e.to_string(),
            })?;
        let mut pairs = Vec::with_capacity(raw.len());
        for (prefix, name) in raw {
            pairs.push((prefix, name.parse::<Genre>()?));
        }
        Ok(Self::from_pairs(pairs))
    }

    pub fn from_pairs(mut pairs: Vec<(String, Genre)>) -> Self {
        pairs.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then_with(|| a.0.cmp(&b.0)));
        GenreMap { prefixes: pairs }
    }

    /// Genre for a text id, by longest matching prefix.
    pub fn genre_for(&self, text_id: &str) -> Option<Genre> {
        self.prefixes
            .iter()
            .find(|(prefix, _)| text_id.starts_with(prefix.as_str()))
            .map(|&(_, genre)| genre)
    }
}

/// Paragraph contexts keyed by `<textid_paraid>`, loaded from JSON lines
/// of the form `{"id": "...", "text": "..."}`.
#[derive(Debug, Clone, Default)]
pub struct Contexts {
    map: HashMap<String, Vec<String>>,
}

impl Contexts {
    pub fn load(path: &Path) -> Result<Self, CorpusError> {
        let file = File::open(path).map_err(|e| CorpusError::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        let reader = BufReader::new(file);
        let mut map = HashMap::new();
        for (idx, line) in reader.lines().enumerate() {
            let line_no = idx as u64 + 1;
            let line = line.map_err(|e| CorpusError::Io {
                path: path.display().to_string(),
                source: e,
            })?;
            if line.trim().is_empty() {
                continue;
            }
            #[derive(serde::Deserialize)]
            struct Record {
                id: String,
                text: String,
            }
            let rec: Record = serde_json::from_str(&line).map_err(|e| CorpusError::Json {
                line: line_no,
                msg: e.to_string(),
            })?;
            let tokens = rec.text.split_whitespace().map(str::to_string).collect();
            map.insert(rec.id, tokens);
        }
        Ok(Contexts { map })
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Finds the paragraph enclosing an example.
    ///
    /// Example ids are underscore-joined (`textid_sentid_tokenidx`);
    /// context records are keyed by a prefix of that id. Candidate keys
    /// are formed by stripping trailing `_` segments, longest first, so
    /// per-sentence paragraph records (`textid_sentid`) win over
    /// whole-text fallbacks (`textid`).
    pub fn for_example(&self, example_id: &str) -> Option<&Vec<String>> {
        let mut key = example_id;
        while let Some(cut) = key.rfind('_') {
            key = &key[..cut];
            if let Some(tokens) = self.map.get(key) {
                return Some(tokens);
            }
        }
        None
    }
}

/// Loads a shared-task examples CSV and joins each row with its
/// enclosing paragraph.
///
/// The CSV must carry the header `id,sentence,verb_index,lemma,label`;
/// the sentence field holds space-separated tokens. Genre is derived
/// from the text-id prefix (the id up to the first `_`) via the genre
/// map. Rows whose id has no matching context paragraph get an empty
/// context; the total is logged as a warning.
pub fn load_shared_task_csv(
    examples_path: &Path,
    contexts_path: &Path,
    genre_map: &GenreMap,
    split_tag: SplitTag,
) -> Result<ExampleSet, CorpusError> {
    let contexts = Contexts::load(contexts_path)?;
    load_shared_task_csv_with(examples_path, &contexts, genre_map, split_tag)
}

/// As [`load_shared_task_csv`], with an already-loaded contexts table.
pub fn load_shared_task_csv_with(
    examples_path: &Path,
    contexts: &Contexts,
    genre_map: &GenreMap,
    split_tag: SplitTag,
) -> Result<ExampleSet, CorpusError> {
    let file = File::open(examples_path).map_err(|e| CorpusError::Io {
        path: examples_path.display().to_string(),
        source: e,
    })?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(BufReader::new(file));

    let headers = reader
        .headers()
        .map_err(|e| CorpusError::MalformedRow {
            line: 1,
            msg: e.to_string(),
        })?
        .clone();
    let found: Vec<&str> = headers.iter().collect();
    if found != EXPECTED_HEADER {
        return Err(CorpusError::BadHeader {
            expected: EXPECTED_HEADER.join(","),
            found: found.join(","),
        });
    }

    let mut examples = Vec::new();
    let mut missing_context = 0usize;
    for record in reader.records() {
        let record = record.map_err(|e| CorpusError::MalformedRow {
            line: e
                .position()
                .map(|p| p.line())
                .unwrap_or(0),
            msg: e.to_string(),
        })?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        if record.len() != EXPECTED_HEADER.len() {
            return Err(CorpusError::MalformedRow {
                line,
                msg: format!("expected {} fields, found {}", EXPECTED_HEADER.len(), record.len()),
            });
        }
        let id = record[0].to_string();
        let sentence_tokens: Vec<String> =
            record[1].split_whitespace().map(str::to_string).collect();
        let verb_index: usize = record[2].parse().map_err(|_| CorpusError::MalformedRow {
            line,
            msg: format!("verb_index {:?} is not a non-negative integer", &record[2]),
        })?;
        if verb_index >= sentence_tokens.len() {
            return Err(CorpusError::MalformedRow {
                line,
                msg: format!(
                    "verb_index {verb_index} out of range for a {}-token sentence",
                    sentence_tokens.len()
                ),
            });
        }
        let verb_lemma = record[3].to_string();
        let label: u8 = match &record[4] {
            "0" => 0,
            "1" => 1,
            other => {
                return Err(CorpusError::MalformedRow {
                    line,
                    msg: format!("label {other:?} is not 0 or 1"),
                })
            }
        };
        let text_id = id.split('_').next().unwrap_or(&id).to_string();
        let genre = genre_map
            .genre_for(&text_id)
            .ok_or(CorpusError::UnknownGenrePrefix { prefix: text_id })?;
        let context_tokens = match contexts.for_example(&id) {
            Some(tokens) => tokens.clone(),
            None => {
                missing_context += 1;
                Vec::new()
            }
        };
        examples.push(Example {
            id,
            sentence_tokens,
            verb_index,
            verb_lemma,
            label,
            genre,
            context_tokens,
            subject: None,
            object: None,
        });
    }
    if missing_context > 0 {
        log::warn!(
            "{missing_context} of {} examples had no matching context paragraph",
            examples.len()
        );
    }
    ExampleSet::new(examples, split_tag)
}
