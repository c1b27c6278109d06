use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

/// Mines condition-action sentences from parsed clinical guidelines.
#[derive(Debug, Parser)]
#[command(name = "cond-miner", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List candidate condition subtrees and the kept/removed counts per guideline.
    Candidates {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Write the feature tokens of every candidate sentence and the vocabulary.
    Featurize {
        #[command(flatten)]
        corpus: CorpusArgs,
        /// Feature lines (JSONL); stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Vocabulary file (JSON array of tokens).
        #[arg(long)]
        vocab: Option<PathBuf>,
    },
    /// Train one classifier on all candidate sentences and save the model.
    Train {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = Classifier::Rf)]
        classifier: Classifier,
        /// Model file (JSON); stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cross-validate classifiers and print the results table.
    Evaluate {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        model: ModelArgs,
        /// Repeat or comma-separate to get one table row per classifier.
        #[arg(long, value_delimiter = ',', default_values_t = [Classifier::Zeror, Classifier::Nb, Classifier::C45, Classifier::Rf])]
        classifier: Vec<Classifier>,
        #[arg(long, default_value_t = 10)]
        folds: usize,
        /// Report set (JSON) destination.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Emit::Table)]
        emit: Emit,
        /// Figure shown in the table's Total column.
        #[arg(long, value_enum, default_value_t = Total::WeightedPrecision)]
        total: Total,
        /// Title of the table; defaults to the input file stem.
        #[arg(long)]
        name: Option<String>,
    },
    /// Label counts per guideline.
    Stats {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Write a seeded synthetic corpus with hand-built parses.
    GenerateSynthetic {
        #[arg(long, default_value_t = 200)]
        size: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Sentences without candidate structure; 7 in 20 by default.
        #[arg(long)]
        patternless: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Jsonl)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-render a saved report set as a table.
    Render {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Total::WeightedPrecision)]
        total: Total,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct CorpusArgs {
    #[arg(long)]
    input: PathBuf,
    /// Inferred from the file extension when omitted.
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long = "label-map", value_enum, default_value_t = LabelMap::Three)]
    label_map: LabelMap,
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Emit::Table)]
    emit: Emit,
}

#[derive(Debug, Args)]
struct ModelArgs {
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Trees per forest.
    #[arg(long, default_value_t = 100)]
    trees: usize,
    /// Columns sampled per forest node; floor(log2 d) + 1 when omitted.
    #[arg(long)]
    features_per_node: Option<usize>,
    /// Naive Bayes smoothing.
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    #[arg(long, default_value_t = 2)]
    min_leaf: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Jsonl,
    Tsv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LabelMap {
    Raw4,
    Three,
    ThreeActionCc,
    BinaryCa,
    MergedCond,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Classifier {
    Zeror,
    Nb,
    C45,
    Rf,
}

impl std::fmt::Display for Classifier {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = self.to_possible_value().expect("no skipped variants");
        f.write_str(name.get_name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Total {
    WeightedPrecision,
    Accuracy,
}

/// A report failed its own consistency checks.
#[derive(Debug, thiserror::Error)]
#[error("invariant violated: {0}")]
struct InvariantViolation(String);

fn write_output(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    use anyhow::Context;
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("COND_MINER_LOG", "warn")).init();

    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };

    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is::<InvariantViolation>() => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
