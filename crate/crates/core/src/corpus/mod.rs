//! Corpus ingestion: annotated verb usages, dependency parses, argument
//! extraction, and train/dev splitting.
//!
//! All loaders are pure functions over file contents. The resulting sets
//! are immutable after construction and safe to share across threads.

mod conllu;
mod shared_task;

pub use conllu::load_conllu;
pub use shared_task::{load_shared_task_csv, load_shared_task_csv_with, Contexts, GenreMap};

use std::collections::HashSet;
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors produced while loading or transforming corpus data.
#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("io error reading {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed row at line {line}: {msg}")]
    MalformedRow { line: u64, msg: String },
    #[error("unexpected csv header {found:?}, expected {expected:?}")]
    BadHeader { expected: String, found: String },
    #[error("unknown genre prefix {prefix:?} (no entry in the genre map)")]
    UnknownGenrePrefix { prefix: String },
    #[error("unknown genre name {name:?}, expected one of Academic, Conversation, Fiction, News")]
    UnknownGenreName { name: String },
    #[error("conll-u parse error at line {line}: {msg}")]
    Conllu { line: u64, msg: String },
    #[error("conll-u block {ordinal} has no `# sent_id =` comment")]
    MissingSentId { ordinal: usize },
    #[error("duplicate sentence id {id:?}")]
    DuplicateSentId { id: String },
    #[error("duplicate example id {id:?}")]
    DuplicateExampleId { id: String },
    #[error(
        "token count mismatch for sentence {sentence_id:?}: parse has {parse_len}, example has {example_len}"
    )]
    Alignment {
        sentence_id: String,
        parse_len: usize,
        example_len: usize,
    },
    #[error("dev size {n} exceeds training set size {size}")]
    DevTooLarge { n: usize, size: usize },
    #[error("bad json at line {line}: {msg}")]
    Json { line: u64, msg: String },
}

/// BNC genre of the text an example was drawn from.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
pub enum Genre {
    Academic,
    Conversation,
    Fiction,
    News,
}

impl Genre {
    /// All genres in the fixed reporting order.
    pub const ALL: [Genre; 4] = [
        Genre::Academic,
        Genre::Conversation,
        Genre::Fiction,
        Genre::News,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Genre::Academic => "Academic",
            Genre::Conversation => "Conversation",
            Genre::Fiction => "Fiction",
            Genre::News => "News",
        }
    }
}

impl fmt::Display for Genre {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Genre {
    type Err = CorpusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Academic" => Ok(Genre::Academic),
            "Conversation" => Ok(Genre::Conversation),
            "Fiction" => Ok(Genre::Fiction),
            "News" => Ok(Genre::News),
            _ => Err(CorpusError::UnknownGenreName { name: s.to_string() }),
        }
    }
}

/// Syntactic role an argument fills relative to its verb.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ArgRelation {
    Subject,
    Object,
}

/// A verb argument, represented by its dependency head word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArgumentSpan {
    pub head_token: String,
    pub head_lemma: String,
    pub relation: ArgRelation,
}

/// One annotated verb usage together with its discourse context.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Example {
    /// Corpus token identifier, e.g. `textid_sentid_tokenidx`.
    pub id: String,
    pub sentence_tokens: Vec<String>,
    /// 0-based index of the target verb within `sentence_tokens`.
    pub verb_index: usize,
    pub verb_lemma: String,
    /// 1 = metaphor, 0 = literal.
    pub label: u8,
    pub genre: Genre,
    /// Tokens of the enclosing paragraph; may be empty, never absent.
    pub context_tokens: Vec<String>,
    pub subject: Option<ArgumentSpan>,
    pub object: Option<ArgumentSpan>,
}

impl Example {
    pub fn has_argument(&self) -> bool {
        self.subject.is_some() || self.object.is_some()
    }
}

/// Which split an [`ExampleSet`] belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SplitTag {
    Train,
    Dev,
    Test,
}

impl fmt::Display for SplitTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SplitTag::Train => "train",
            SplitTag::Dev => "dev",
            SplitTag::Test => "test",
        })
    }
}

/// An ordered collection of examples with unique ids.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExampleSet {
    pub examples: Vec<Example>,
    pub split_tag: SplitTag,
}

impl ExampleSet {
    /// Builds a set, rejecting duplicate ids.
    pub fn new(examples: Vec<Example>, split_tag: SplitTag) -> Result<Self, CorpusError> {
        let mut seen = HashSet::with_capacity(examples.len());
        for ex in &examples {
            if !seen.insert(ex.id.as_str()) {
                return Err(CorpusError::DuplicateExampleId { id: ex.id.clone() });
            }
        }
        Ok(ExampleSet { examples, split_tag })
    }

    pub fn len(&self) -> usize {
        self.examples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.examples.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Example> {
        self.examples.iter()
    }

    /// Fraction of examples with at least one extracted argument.
    pub fn argument_coverage(&self) -> f64 {
        if self.examples.is_empty() {
            return 0.0;
        }
        let with = self.examples.iter().filter(|e| e.has_argument()).count();
        with as f64 / self.examples.len() as f64
    }
}

/// One token of an externally produced dependency parse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedToken {
    pub form: String,
    pub lemma: String,
    /// 0 for the root, otherwise a 1-based index into the sentence.
    pub head_index: usize,
    pub deprel: String,
}

/// A dependency-parsed sentence keyed by its corpus sentence id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedSentence {
    pub sentence_id: String,
    pub tokens: Vec<ParsedToken>,
}

const SUBJECT_DEPRELS: [&str; 3] = ["nsubj", "nsubj:pass", "csubj"];
const OBJECT_DEPRELS: [&str; 2] = ["obj", "dobj"];

/// Extracts the subject and direct object of the example's target verb
/// from an aligned dependency parse.
///
/// The subject is the first (lowest token index) dependent of the verb
/// whose relation is `nsubj`, `nsubj:pass`, or `csubj`; the object is
/// the first dependent with relation `obj` or `dobj`. Each is returned
/// as its head token and lemma. Absent arguments yield `None`.
pub fn extract_arguments(
    example: &Example,
    parse: &ParsedSentence,
) -> Result<(Option<ArgumentSpan>, Option<ArgumentSpan>), CorpusError> {
    if parse.tokens.len() != example.sentence_tokens.len() {
        return Err(CorpusError::Alignment {
            sentence_id: parse.sentence_id.clone(),
            parse_len: parse.tokens.len(),
            example_len: example.sentence_tokens.len(),
        });
    }
    let verb_head = example.verb_index + 1; // heads are 1-based
    let mut subject = None;
    let mut object = None;
    for token in &parse.tokens {
        if token.head_index != verb_head {
            continue;
        }
        if subject.is_none() && SUBJECT_DEPRELS.contains(&token.deprel.as_str()) {
            subject = Some(ArgumentSpan {
                head_token: token.form.clone(),
                head_lemma: token.lemma.clone(),
                relation: ArgRelation::Subject,
            });
        } else if object.is_none() && OBJECT_DEPRELS.contains(&token.deprel.as_str()) {
            object = Some(ArgumentSpan {
                head_token: token.form.clone(),
                head_lemma: token.lemma.clone(),
                relation: ArgRelation::Object,
            });
        }
        if subject.is_some() && object.is_some() {
            break;
        }
    }
    Ok((subject, object))
}

/// Samples `n` examples from `train` as a development set.
///
/// Deterministic for a given seed. The dev set holds the sampled
/// examples (in sampled order); the remainder keeps its original order.
/// Id sets are disjoint by construction.
pub fn split_dev(
    train: ExampleSet,
    n: usize,
    seed: u64,
) -> Result<(ExampleSet, ExampleSet), CorpusError> {
    let size = train.len();
    if n > size {
        return Err(CorpusError::DevTooLarge { n, size });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let picked = rand::seq::index::sample(&mut rng, size, n);
    let mut in_dev = vec![false; size];
    for i in picked.iter() {
        in_dev[i] = true;
    }
    let mut examples = train.examples;
    let mut dev = Vec::with_capacity(n);
    for i in picked.iter() {
        dev.push(examples[i].clone());
    }
    let mut keep = examples
        .drain(..)
        .zip(in_dev)
        .filter_map(|(ex, taken)| (!taken).then_some(ex))
        .collect::<Vec<_>>();
    keep.shrink_to_fit();
    Ok((
        ExampleSet {
            examples: keep,
            split_tag: SplitTag::Train,
        },
        ExampleSet {
            examples: dev,
            split_tag: SplitTag::Dev,
        },
    ))
}

/// Writes examples as JSON lines, one example per line.
pub fn write_examples_jsonl<W: Write>(writer: W, examples: &[Example]) -> Result<(), CorpusError> {
    let mut w = BufWriter::new(writer);
    for ex in examples {
        let line = serde_json::to_string(ex).map_err(|e| CorpusError::Json {
            line: 0,
            msg: e.to_string(),
        })?;
        writeln!(w, "{line}").map_err(|e| CorpusError::Io {
            path: "<writer>".into(),
            source: e,
        })?;
    }
    w.flush().map_err(|e| CorpusError::Io {
        path: "<writer>".into(),
        source: e,
    })
}

/// Reads a JSON-lines example file written by [`write_examples_jsonl`].
pub fn read_examples_jsonl(path: &Path) -> Result<Vec<Example>, CorpusError> {
    let file = File::open(path).map_err(|e| CorpusError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    let reader = BufReader::new(file);
    let mut examples = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| CorpusError::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let ex = serde_json::from_str(&line).map_err(|e| CorpusError::Json {
            line: idx as u64 + 1,
            msg: e.to_string(),
        })?;
        examples.push(ex);
    }
    Ok(examples)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example(id: &str, tokens: &[&str], verb_index: usize) -> Example {
        Example {
            id: id.to_string(),
            sentence_tokens: tokens.iter().map(|t| t.to_string()).collect(),
            verb_index,
            verb_lemma: tokens[verb_index].to_string(),
            label: 0,
            genre: Genre::News,
            context_tokens: vec![],
            subject: None,
            object: None,
        }
    }

    fn parse(id: &str, tokens: &[(&str, &str, usize, &str)]) -> ParsedSentence {
        ParsedSentence {
            sentence_id: id.to_string(),
            tokens: tokens
                .iter()
                .map(|&(form, lemma, head, deprel)| ParsedToken {
                    form: form.to_string(),
                    lemma: lemma.to_string(),
                    head_index: head,
                    deprel: deprel.to_string(),
                })
                .collect(),
        }
    }

    #[test]
    fn extracts_subject_and_object() {
        let ex = example("t_1_1", &["cars", "drink", "gasoline"], 1);
        let p = parse(
            "t_1",
            &[
                ("cars", "car", 2, "nsubj"),
                ("drink", "drink", 0, "root"),
                ("gasoline", "gasoline", 2, "obj"),
            ],
        );
        let (subj, obj) = extract_arguments(&ex, &p).unwrap();
        let subj = subj.unwrap();
        assert_eq!(subj.head_token, "cars");
        assert_eq!(subj.head_lemma, "car");
        assert_eq!(subj.relation, ArgRelation::Subject);
        let obj = obj.unwrap();
        assert_eq!(obj.head_token, "gasoline");
        assert_eq!(obj.relation, ArgRelation::Object);
    }

    #[test]
    fn verb_without_dependents_has_no_arguments() {
        let ex = example("t_1_0", &["go"], 0);
        let p = parse("t_1", &[("go", "go", 0, "root")]);
        let (subj, obj) = extract_arguments(&ex, &p).unwrap();
        assert!(subj.is_none());
        assert!(obj.is_none());
    }

    #[test]
    fn two_subjects_take_lowest_token_index() {
        let ex = example("t_1_2", &["a", "b", "eat", "c", "d", "e"], 2);
        let p = parse(
            "t_1",
            &[
                ("a", "a", 3, "det"),
                ("b", "b", 3, "nsubj"),
                ("eat", "eat", 0, "root"),
                ("c", "c", 3, "obj"),
                ("d", "d", 3, "punct"),
                ("e", "e", 3, "nsubj"),
            ],
        );
        let (subj, _) = extract_arguments(&ex, &p).unwrap();
        assert_eq!(subj.unwrap().head_token, "b");
    }

    #[test]
    fn passive_subject_fills_subject_slot() {
        let ex = example("t_1_1", &["walls", "shaken"], 1);
        let p = parse(
            "t_1",
            &[("walls", "wall", 2, "nsubj:pass"), ("shaken", "shake", 0, "root")],
        );
        let (subj, obj) = extract_arguments(&ex, &p).unwrap();
        assert_eq!(subj.unwrap().head_lemma, "wall");
        assert!(obj.is_none());
    }

    #[test]
    fn misaligned_parse_is_an_error_naming_the_sentence() {
        let ex = example("t_9_1", &["a", "b", "c"], 1);
        let p = parse("t_9", &[("a", "a", 0, "root")]);
        let err = extract_arguments(&ex, &p).unwrap_err();
        assert!(err.to_string().contains("t_9"), "message: {err}");
    }

    #[test]
    fn split_dev_zero_keeps_train_unchanged() {
        let set = ExampleSet::new(
            (0..5).map(|i| example(&format!("e{i}"), &["v"], 0)).collect(),
            SplitTag::Train,
        )
        .unwrap();
        let original = set.clone();
        let (train, dev) = split_dev(set, 0, 7).unwrap();
        assert_eq!(train.examples, original.examples);
        assert!(dev.is_empty());
        assert_eq!(dev.split_tag, SplitTag::Dev);
    }

    #[test]
    fn split_dev_all_empties_train() {
        let set = ExampleSet::new(
            (0..5).map(|i| example(&format!("e{i}"), &["v"], 0)).collect(),
            SplitTag::Train,
        )
        .unwrap();
        let (train, dev) = split_dev(set, 5, 7).unwrap();
        assert!(train.is_empty());
        let mut ids: Vec<_> = dev.iter().map(|e| e.id.clone()).collect();
        ids.sort();
        assert_eq!(ids, vec!["e0", "e1", "e2", "e3", "e4"]);
    }

    #[test]
    fn split_dev_is_deterministic_and_disjoint() {
        let make = || {
            ExampleSet::new(
                (0..300)
                    .map(|i| example(&format!("e{i}"), &["v"], 0))
                    .collect(),
                SplitTag::Train,
            )
            .unwrap()
        };
        let (train_a, dev_a) = split_dev(make(), 40, 99).unwrap();
        let (train_b, dev_b) = split_dev(make(), 40, 99).unwrap();
        assert_eq!(dev_a.examples, dev_b.examples);
        assert_eq!(train_a.examples, train_b.examples);
        assert_eq!(train_a.len() + dev_a.len(), 300);
        let dev_ids: HashSet<_> = dev_a.iter().map(|e| e.id.as_str()).collect();
        assert!(train_a.iter().all(|e| !dev_ids.contains(e.id.as_str())));
        // remainder preserves original order
        let kept: Vec<usize> = train_a
            .iter()
            .map(|e| e.id[1..].parse::<usize>().unwrap())
            .collect();
        assert!(kept.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn split_dev_rejects_oversized_request() {
        let set = ExampleSet::new(vec![example("e0", &["v"], 0)], SplitTag::Train).unwrap();
        assert!(matches!(
            split_dev(set, 2, 0),
            Err(CorpusError::DevTooLarge { n: 2, size: 1 })
        ));
    }

    #[test]
    fn duplicate_ids_rejected() {
        let err = ExampleSet::new(
            vec![example("x", &["v"], 0), example("x", &["v"], 0)],
            SplitTag::Train,
        )
        .unwrap_err();
        assert!(matches!(err, CorpusError::DuplicateExampleId { .. }));
    }

    #[test]
    fn examples_jsonl_round_trip() {
        let mut ex = example("t_1_1", &["cars", "drink", "gasoline"], 1);
        ex.subject = Some(ArgumentSpan {
            head_token: "cars".into(),
            head_lemma: "car".into(),
            relation: ArgRelation::Subject,
        });
        ex.context_tokens = vec!["oil".into(), "prices".into()];
        let mut buf = Vec::new();
        write_examples_jsonl(&mut buf, std::slice::from_ref(&ex)).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ex.jsonl");
        std::fs::write(&path, &buf).unwrap();
        let back = read_examples_jsonl(&path).unwrap();
        assert_eq!(back, vec![ex]);
    }
}
