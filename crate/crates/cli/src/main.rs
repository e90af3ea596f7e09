use clap::{Parser, Subcommand};

use metaphor_cli::commands::{
    compare, evaluate, gen_synthetic, predict, prepare, report, train,
};

/// Metaphorical-verb classification from lemma, argument, and
/// discourse-context embeddings.
#[derive(Parser)]
#[command(name = "metaphor", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Join corpus, contexts, and parses into prepared splits
    Prepare(prepare::PrepareArgs),
    /// Generate a synthetic dataset with a context-determined label
    GenSynthetic(gen_synthetic::GenSyntheticArgs),
    /// Train a boosted-tree classifier on prepared data
    Train(train::TrainArgs),
    /// Score a split with a trained run
    Predict(predict::PredictArgs),
    /// Overall and per-genre precision/recall/F1 for a run
    Evaluate(evaluate::EvaluateArgs),
    /// Mid-p McNemar test between two runs on the same split
    Compare(compare::CompareArgs),
    /// Combined results table over several runs
    Report(report::ReportArgs),
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Prepare(args) => prepare::run(&args).map(|_| ()),
        Command::GenSynthetic(args) => gen_synthetic::run(&args).map(|_| ()),
        Command::Train(args) => train::run(&args).map(|_| ()),
        Command::Predict(args) => predict::run(&args).map(|_| ()),
        Command::Evaluate(args) => evaluate::run(&args).map(|_| ()),
        Command::Compare(args) => compare::run(&args).map(|_| ()),
        Command::Report(args) => report::run(&args).map(|_| ()),
    };
    if let Err(err) = result {
        eprintln!("error: {err:#}");
        std::process::exit(metaphor_cli::exit_code(&err));
    }
}
