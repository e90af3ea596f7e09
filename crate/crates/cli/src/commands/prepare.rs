//! `prepare`: join the shared-task corpus with contexts and parses,
//! extract verb arguments, sample the dev set, and write the prepared
//! splits.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::Args;

use metaphor_core::corpus::{
    extract_arguments, load_conllu, load_shared_task_csv_with, split_dev, write_examples_jsonl,
    Contexts, ExampleSet, GenreMap, ParsedSentence, SplitTag,
};

use crate::util::{atomic_write, require_exists};

#[derive(Debug, Clone, Args)]
pub struct PrepareArgs {
    /// Shared-task training CSV (id,sentence,verb_index,lemma,label)
    #[arg(long, value_name = "FILE")]
    pub train_csv: PathBuf,
    /// Shared-task test CSV; omit to prepare training data only
    #[arg(long, value_name = "FILE")]
    pub test_csv: Option<PathBuf>,
    /// Paragraph contexts, JSON lines of {"id", "text"}
    #[arg(long, value_name = "FILE")]
    pub contexts: PathBuf,
    /// Dependency parses in CoNLL-U, keyed by `# sent_id =`
    #[arg(long, value_name = "FILE")]
    pub parses: PathBuf,
    /// Text-id-prefix to genre map, JSON object
    #[arg(long, value_name = "FILE")]
    pub genre_map: PathBuf,
    /// Output directory for train/dev/test JSONL files
    #[arg(long, value_name = "DIR")]
    pub out: PathBuf,
    /// Development-set size sampled from the training data
    #[arg(long, default_value_t = 500)]
    pub dev_size: usize,
    /// Seed for dev-set sampling
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub struct PrepareSummary {
    pub train: usize,
    pub dev: usize,
    pub test: usize,
    /// Fraction of prepared examples with at least one argument.
    pub argument_coverage: f64,
    pub missing_parses: usize,
}

pub fn run(args: &PrepareArgs) -> Result<PrepareSummary> {
    require_exists(&args.train_csv)?;
    if let Some(test_csv) = &args.test_csv {
        require_exists(test_csv)?;
    }
    require_exists(&args.contexts)?;
    require_exists(&args.parses)?;
    require_exists(&args.genre_map)?;

    let genre_map = GenreMap::load(&args.genre_map).context("loading genre map")?;
    let contexts = Contexts::load(&args.contexts).context("loading contexts")?;
    let parses = load_conllu(&args.parses).context("loading parses")?;

    let mut missing_parses = 0usize;
    let mut attach = |set: &mut ExampleSet| -> Result<()> {
        for example in &mut set.examples {
            match lookup_parse(&parses, &example.id) {
                Some(parse) => {
                    let (subject, object) = extract_arguments(example, parse)
                        .with_context(|| format!("extracting arguments for {}", example.id))?;
                    example.subject = subject;
                    example.object = object;
                }
                None => missing_parses += 1,
            }
        }
        Ok(())
    };

    let mut train =
        load_shared_task_csv_with(&args.train_csv, &contexts, &genre_map, SplitTag::Train)
            .with_context(|| format!("loading {}", args.train_csv.display()))?;
    attach(&mut train)?;
    let test = match &args.test_csv {
        Some(path) => {
            let mut set = load_shared_task_csv_with(path, &contexts, &genre_map, SplitTag::Test)
                .with_context(|| format!("loading {}", path.display()))?;
            attach(&mut set)?;
            Some(set)
        }
        None => None,
    };

    let (train, dev) = split_dev(train, args.dev_size, args.seed)?;

    let total;
    let with_argument;
    {
        let all = train
            .iter()
            .chain(dev.iter())
            .chain(test.iter().flat_map(|s| s.iter()));
        let mut n = 0usize;
        let mut with = 0usize;
        for ex in all {
            n += 1;
            with += usize::from(ex.has_argument());
        }
        total = n;
        with_argument = with;
    }
    let argument_coverage = if total == 0 {
        0.0
    } else {
        with_argument as f64 / total as f64
    };

    std::fs::create_dir_all(&args.out)?;
    write_split(&args.out, "train.jsonl", &train)?;
    write_split(&args.out, "dev.jsonl", &dev)?;
    if let Some(test) = &test {
        write_split(&args.out, "test.jsonl", test)?;
    }

    let summary = PrepareSummary {
        train: train.len(),
        dev: dev.len(),
        test: test.as_ref().map_or(0, ExampleSet::len),
        argument_coverage,
        missing_parses,
    };
    println!(
        "prepared {} train / {} dev / {} test examples in {}",
        summary.train,
        summary.dev,
        summary.test,
        args.out.display()
    );
    println!(
        "argument coverage: {:.1}% ({}/{} examples with at least one argument)",
        100.0 * argument_coverage,
        with_argument,
        total
    );
    if missing_parses > 0 {
        log::warn!("{missing_parses} examples had no parse; their argument slots stay empty");
    }
    Ok(summary)
}

/// The parse for an example is keyed by the example id minus its final
/// `_` segment (`textid_sentid_tokenidx` -> `textid_sentid`).
fn lookup_parse<'a>(
    parses: &'a BTreeMap<String, ParsedSentence>,
    example_id: &str,
) -> Option<&'a ParsedSentence> {
    let key = example_id.rsplit_once('_').map(|(head, _)| head)?;
    parses.get(key)
}

fn write_split(out: &Path, name: &str, set: &ExampleSet) -> Result<()> {
    let mut buf = Vec::new();
    write_examples_jsonl(&mut buf, &set.examples)?;
    atomic_write(&out.join(name), &buf)
}
