use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ses_core::SchemeId;

mod commands;

/// Shortest edit script lemmatization: label treebanks, decode labels,
/// evaluate lemmatizers and compare label schemes.
#[derive(Debug, Parser)]
#[command(name = "ses", version)]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,

    /// Uppercase the first letter of lowercased PROPN lemmas in gold input.
    #[arg(long, global = true)]
    adjust_propn: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, Eq, PartialEq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, Eq, PartialEq, ValueEnum)]
enum SchemeArg {
    Udpipe,
    Ixapipes,
    Morpheus,
    All,
}

impl SchemeArg {
    fn schemes(self) -> Vec<SchemeId> {
        match self {
            SchemeArg::Udpipe => vec![SchemeId::Udpipe],
            SchemeArg::Ixapipes => vec![SchemeId::Ixapipes],
            SchemeArg::Morpheus => vec![SchemeId::Morpheus],
            SchemeArg::All => SchemeId::ALL.to_vec(),
        }
    }
}

#[derive(Clone, Copy, Debug, Eq, PartialEq, ValueEnum)]
enum SingleScheme {
    Udpipe,
    Ixapipes,
    Morpheus,
}

impl From<SingleScheme> for SchemeId {
    fn from(s: SingleScheme) -> Self {
        match s {
            SingleScheme::Udpipe => SchemeId::Udpipe,
            SingleScheme::Ixapipes => SchemeId::Ixapipes,
            SingleScheme::Morpheus => SchemeId::Morpheus,
        }
    }
}

#[derive(Clone, Copy, Debug, Eq, PartialEq, ValueEnum)]
enum PredFormat {
    /// `form<TAB>lemma` lines, blank line between sentences.
    Tsv,
    Conllu,
}

#[derive(Clone, Copy, Debug, Eq, PartialEq, ValueEnum)]
enum Granularity {
    Word,
    Sentence,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Label every lemmatized token of a CoNLL-U file.
    Encode {
        input: PathBuf,
        #[arg(long, value_enum)]
        scheme: SchemeArg,
        /// Labeled TSV output. With `--scheme all` the scheme name is
        /// inserted before the extension (`out.udpipe.tsv`).
        #[arg(short, long)]
        output: PathBuf,
        /// Write tokens that could not be labeled as JSON.
        #[arg(long)]
        failures: Option<PathBuf>,
    },
    /// Apply the labels of a labeled TSV file to its wordforms.
    Decode {
        input: PathBuf,
        #[arg(long, value_enum)]
        scheme: SingleScheme,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Count unique labels per scheme.
    Stats { input: PathBuf },
    /// Word and sentence accuracy of predicted lemmas.
    Eval {
        #[arg(long)]
        gold: PathBuf,
        #[arg(long)]
        pred: PathBuf,
        #[arg(long, value_enum, default_value_t = PredFormat::Tsv)]
        pred_format: PredFormat,
        /// Training corpus; adds accuracy split by in- and out-of-vocabulary forms.
        #[arg(long)]
        train: Option<PathBuf>,
    },
    /// McNemar's test between two prediction files.
    Mcnemar {
        #[arg(long)]
        gold: PathBuf,
        #[arg(long)]
        pred_a: PathBuf,
        #[arg(long)]
        pred_b: PathBuf,
        #[arg(long, value_enum, default_value_t = PredFormat::Tsv)]
        pred_format: PredFormat,
        #[arg(long, value_enum, default_value_t = Granularity::Word)]
        granularity: Granularity,
        #[arg(long, default_value_t = 0.05)]
        alpha: f64,
    },
    /// Train the most-frequent-label baseline.
    Train {
        input: PathBuf,
        #[arg(long, value_enum)]
        scheme: SingleScheme,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Lemmatize a CoNLL-U file with a trained baseline.
    Predict {
        input: PathBuf,
        #[arg(long)]
        model: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = PredFormat::Tsv)]
        output_format: PredFormat,
    },
    /// Compare all schemes on a train/test split with the baseline.
    Compare {
        #[arg(long)]
        train: PathBuf,
        #[arg(long)]
        test: PathBuf,
        #[arg(long, default_value_t = 0.05)]
        alpha: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
