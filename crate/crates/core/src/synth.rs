//! Synthetic corpus generator.
//!
//! Produces a dataset whose label is carried by a single context-only
//! cue token (subject to configurable label noise), while verb lemmas
//! and arguments are drawn independently of the label. Lemma-only and
//! lemma+argument models therefore sit near chance, and context-aware
//! models can only win by actually reading the context slot — which
//! makes the pipeline's central contrast testable without licensed
//! corpus data or pretrained embeddings.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::{ArgRelation, ArgumentSpan, Example, ExampleSet, Genre, SplitTag};
use crate::embeddings::VectorTable;

const VERBS: usize = 20;
const NOUNS: usize = 40;
const FILLERS: usize = 60;
/// Cue tokens carry this weight on the first two vector components, so
/// their contribution survives averaging over the whole context.
const CUE_SCALE: f64 = 8.0;
const CUE_MET: &str = "cue_met";
const CUE_LIT: &str = "cue_lit";

#[derive(Debug, Clone)]
pub struct SynthConfig {
    pub train_size: usize,
    pub dev_size: usize,
    pub test_size: usize,
    /// Per-slot embedding dimension.
    pub dim: usize,
    /// Probability of flipping the cue-implied label.
    pub noise: f64,
    pub seed: u64,
    pub context_min: usize,
    pub context_max: usize,
    /// Probability that the subject (and, independently, the object)
    /// is present.
    pub arg_presence: f64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            train_size: 2000,
            dev_size: 0,
            test_size: 500,
            dim: 10,
            noise: 0.1,
            seed: 1,
            context_min: 5,
            context_max: 15,
            arg_presence: 0.8,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SynthData {
    pub train: ExampleSet,
    pub dev: ExampleSet,
    pub test: ExampleSet,
    pub table: VectorTable,
}

/// Generates a full synthetic dataset. Deterministic for a given
/// config; the vocabulary table and each split use independent seed
/// streams so resizing one split leaves the others unchanged.
pub fn generate(config: &SynthConfig) -> SynthData {
    assert!(config.dim >= 1, "dim must be at least 1");
    assert!(
        config.context_min >= 1 && config.context_min <= config.context_max,
        "context bounds must satisfy 1 <= min <= max"
    );

    let table = build_table(config);
    let train = generate_split(config, SplitTag::Train, config.train_size, 1);
    let dev = generate_split(config, SplitTag::Dev, config.dev_size, 2);
    let test = generate_split(config, SplitTag::Test, config.test_size, 3);
    SynthData {
        train,
        dev,
        test,
        table,
    }
}

fn build_table(config: &SynthConfig) -> VectorTable {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut entries: Vec<(String, Vec<f64>)> = Vec::new();
    for word in vocab_words() {
        let vector: Vec<f64> = (0..config.dim)
            .map(|_| rng.random_range(-1.5..1.5))
            .collect();
        entries.push((word, vector));
    }
    for (cue, sign) in [(CUE_MET, 1.0), (CUE_LIT, -1.0)] {
        let mut vector = vec![0.0; config.dim];
        vector[0] = sign * CUE_SCALE;
        if config.dim > 1 {
            vector[1] = sign * CUE_SCALE;
        }
        entries.push((cue.to_string(), vector));
    }
    VectorTable::from_entries(entries).expect("synthetic vocabulary is never empty")
}

fn vocab_words() -> Vec<String> {
    let mut words = Vec::with_capacity(VERBS + NOUNS + FILLERS);
    words.extend((0..VERBS).map(|i| format!("verb{i:02}")));
    words.extend((0..NOUNS).map(|i| format!("noun{i:02}")));
    words.extend((0..FILLERS).map(|i| format!("filler{i:02}")));
    words
}

fn generate_split(
    config: &SynthConfig,
    tag: SplitTag,
    size: usize,
    stream: u64,
) -> ExampleSet {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(stream));
    let examples = (0..size)
        .map(|i| generate_example(config, &mut rng, &format!("syn_{tag}_{i:05}")))
        .collect();
    ExampleSet::new(examples, tag).expect("generated ids are unique")
}

fn generate_example(config: &SynthConfig, rng: &mut ChaCha8Rng, id: &str) -> Example {
    let metaphor_cue = rng.random_bool(0.5);
    let cue = if metaphor_cue { CUE_MET } else { CUE_LIT };
    let mut label = u8::from(metaphor_cue);
    if rng.random_bool(config.noise) {
        label ^= 1;
    }

    let verb = format!("verb{:02}", rng.random_range(0..VERBS));
    let subject = rng
        .random_bool(config.arg_presence)
        .then(|| format!("noun{:02}", rng.random_range(0..NOUNS)));
    let object = rng
        .random_bool(config.arg_presence)
        .then(|| format!("noun{:02}", rng.random_range(0..NOUNS)));

    let mut sentence_tokens = Vec::new();
    if let Some(s) = &subject {
        sentence_tokens.push(s.clone());
    }
    let verb_index = sentence_tokens.len();
    sentence_tokens.push(verb.clone());
    if let Some(o) = &object {
        sentence_tokens.push(o.clone());
    }

    let context_len = rng.random_range(config.context_min..=config.context_max);
    let cue_position = rng.random_range(0..context_len);
    let mut context_tokens = Vec::with_capacity(context_len);
    for position in 0..context_len {
        if position == cue_position {
            context_tokens.push(cue.to_string());
        } else {
            context_tokens.push(format!("filler{:02}", rng.random_range(0..FILLERS)));
        }
    }

    let genre = Genre::ALL[rng.random_range(0..Genre::ALL.len())];

    Example {
        id: id.to_string(),
        sentence_tokens,
        verb_index,
        verb_lemma: verb,
        label,
        genre,
        context_tokens,
        subject: subject.map(|s| ArgumentSpan {
            head_token: s.clone(),
            head_lemma: s,
            relation: ArgRelation::Subject,
        }),
        object: object.map(|o| ArgumentSpan {
            head_token: o.clone(),
            head_lemma: o,
            relation: ArgRelation::Object,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_is_deterministic() {
        let config = SynthConfig {
            train_size: 50,
            test_size: 20,
            ..SynthConfig::default()
        };
        let a = generate(&config);
        let b = generate(&config);
        assert_eq!(a.train.examples, b.train.examples);
        assert_eq!(a.test.examples, b.test.examples);
        assert_eq!(a.table.oov(), b.table.oov());
    }

    #[test]
    fn sizes_and_ids_are_respected() {
        let config = SynthConfig {
            train_size: 30,
            dev_size: 5,
            test_size: 10,
            ..SynthConfig::default()
        };
        let data = generate(&config);
        assert_eq!(data.train.len(), 30);
        assert_eq!(data.dev.len(), 5);
        assert_eq!(data.test.len(), 10);
        assert!(data.train.examples[0].id.starts_with("syn_train_"));
        assert!(data.test.examples[9].id.starts_with("syn_test_"));
    }

    #[test]
    fn every_context_has_exactly_one_cue() {
        let data = generate(&SynthConfig {
            train_size: 100,
            test_size: 0,
            ..SynthConfig::default()
        });
        for ex in data.train.iter() {
            let cues = ex
                .context_tokens
                .iter()
                .filter(|t| *t == CUE_MET || *t == CUE_LIT)
                .count();
            assert_eq!(cues, 1, "example {}", ex.id);
            assert!(ex.context_tokens.len() >= 5 && ex.context_tokens.len() <= 15);
        }
    }

    #[test]
    fn noiseless_labels_follow_the_cue() {
        let data = generate(&SynthConfig {
            train_size: 200,
            test_size: 0,
            noise: 0.0,
            ..SynthConfig::default()
        });
        for ex in data.train.iter() {
            let has_met = ex.context_tokens.iter().any(|t| t == CUE_MET);
            assert_eq!(ex.label, u8::from(has_met));
        }
    }

    #[test]
    fn vocabulary_covers_all_tokens() {
        let data = generate(&SynthConfig {
            train_size: 80,
            test_size: 20,
            ..SynthConfig::default()
        });
        for ex in data.train.iter().chain(data.test.iter()) {
            for token in ex.sentence_tokens.iter().chain(&ex.context_tokens) {
                assert_ne!(
                    data.table.word_vector(token),
                    data.table.oov(),
                    "token {token} fell back to oov"
                );
            }
        }
    }
}
