use std::collections::HashSet;
use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;
use ses_core::baseline::{train_baseline, BaselineModel};
use ses_core::compare::{compare_schemes, ComparisonReport};
use ses_core::conllu::{adjust_propn_lemmas, parse_conllu, write_conllu};
use ses_core::labeled::{
    failures_to_json, label_corpus, read_labeled_rows, read_lemma_rows, write_labeled, write_lemma_rows,
};
use ses_core::metrics::{
    inv_oov_accuracy, mcnemar, paired_outcomes, paired_sentence_outcomes, unique_labels, AlignedLemmas, EvalReport,
    InvOovAccuracy,
};
use ses_core::{decode_text, token_count, Corpus, SchemeId};

use crate::{Cli, Command, Format, Granularity, PredFormat};

const CONTRACT: u8 = 1;
const USAGE: u8 = 2;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn contract(message: impl Into<String>) -> Self {
        Failure {
            code: CONTRACT,
            message: message.into(),
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: USAGE,
            message: message.into(),
        }
    }
}

type Result<T> = std::result::Result<T, Failure>;

fn io_failure(path: &Path, err: impl std::fmt::Display) -> Failure {
    Failure::usage(format!("{}: {err}", path.display()))
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path).map(BufReader::new).map_err(|e| io_failure(path, e))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path).map(BufWriter::new).map_err(|e| io_failure(path, e))
}

/// Open `path` for writing, or stdout when absent.
fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(path) => Box::new(create(path)?),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn finish(mut writer: impl Write, path: Option<&Path>) -> Result<()> {
    writer
        .flush()
        .map_err(|e| io_failure(path.unwrap_or(Path::new("<stdout>")), e))
}

fn read_corpus(path: &Path, adjust_propn: bool) -> Result<Corpus> {
    let name = path.display().to_string();
    let corpus = parse_conllu(open(path)?, &name).map_err(|e| io_failure(path, e))?;
    Ok(if adjust_propn {
        adjust_propn_lemmas(&corpus)
    } else {
        corpus
    })
}

/// `out.tsv` becomes `out.udpipe.tsv`; `out` becomes `out.udpipe`.
fn scheme_path(path: &Path, scheme: SchemeId) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}.{scheme}.{}", ext.to_string_lossy()),
        None => format!("{stem}.{scheme}"),
    };
    path.with_file_name(name)
}

fn print_report<T: Serialize>(format: Format, report: &T, text: impl FnOnce() -> String) -> Result<()> {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(report).expect("report serializes")),
        Format::Text => println!("{}", text()),
    }
    Ok(())
}

pub fn run(cli: &Cli) -> Result<()> {
    let adjust = cli.adjust_propn;
    match &cli.command {
        Command::Encode {
            input,
            scheme,
            output,
            failures,
        } => encode(input, &scheme.schemes(), output, failures.as_deref(), adjust),
        Command::Decode { input, scheme, output } => decode(input, (*scheme).into(), output.as_deref()),
        Command::Stats { input } => stats(cli.format, &read_corpus(input, adjust)?),
        Command::Eval {
            gold,
            pred,
            pred_format,
            train,
        } => eval(cli.format, gold, pred, *pred_format, train.as_deref(), adjust),
        Command::Mcnemar {
            gold,
            pred_a,
            pred_b,
            pred_format,
            granularity,
            alpha,
        } => {
            let gold = read_corpus(gold, adjust)?;
            let a = read_predictions(&gold, pred_a, *pred_format)?;
            let b = read_predictions(&gold, pred_b, *pred_format)?;
            let counts = match granularity {
                Granularity::Word => paired_outcomes(&a.flat_gold(), &a.flat_pred(), &b.flat_pred()),
                Granularity::Sentence => paired_sentence_outcomes(&a.gold, &a.pred, &b.pred),
            };
            let (b, c) = counts.map_err(|e| Failure::contract(e.to_string()))?;
            let result = mcnemar(b, c, *alpha);
            print_report(cli.format, &result, || result.to_string())
        }
        Command::Train { input, scheme, output } => {
            let corpus = read_corpus(input, adjust)?;
            let (labeled, failures) = label_corpus(&corpus, (*scheme).into());
            let model = train_baseline(&labeled).map_err(|e| Failure::contract(e.to_string()))?;
            fs::write(output, model.to_json() + "\n").map_err(|e| io_failure(output, e))?;
            eprintln!(
                "trained on {} tokens, {} forms, {} encode failures",
                labeled.token_count(),
                model.per_form.len(),
                failures.len()
            );
            Ok(())
        }
        Command::Predict {
            input,
            model,
            output,
            output_format,
        } => predict(input, model, output.as_deref(), *output_format),
        Command::Compare { train, test, alpha } => {
            let train = read_corpus(train, adjust)?;
            let test = read_corpus(test, adjust)?;
            let report = compare_schemes(&train, &test, *alpha).map_err(|e| Failure::contract(e.to_string()))?;
            print_report(cli.format, &report, || render_comparison(&report))
        }
    }
}

fn encode(input: &Path, schemes: &[SchemeId], output: &Path, failures_path: Option<&Path>, adjust: bool) -> Result<()> {
    let corpus = read_corpus(input, adjust)?;
    let fan_out = schemes.len() > 1;
    let mut total_failures = 0;
    for &scheme in schemes {
        let (labeled, failures) = label_corpus(&corpus, scheme);
        let path = if fan_out {
            scheme_path(output, scheme)
        } else {
            output.to_owned()
        };
        let mut writer = create(&path)?;
        write_labeled(&labeled, &mut writer).map_err(|e| io_failure(&path, e))?;
        finish(writer, Some(&path))?;
        if let Some(failures_path) = failures_path {
            let failures_path = if fan_out {
                scheme_path(failures_path, scheme)
            } else {
                failures_path.to_owned()
            };
            fs::write(&failures_path, failures_to_json(&failures) + "\n").map_err(|e| io_failure(&failures_path, e))?;
        }
        eprintln!(
            "{scheme}: {} tokens labeled, {} failures -> {}",
            labeled.token_count(),
            failures.len(),
            path.display()
        );
        total_failures += failures.len();
    }
    if total_failures > 0 {
        return Err(Failure::contract(format!(
            "{total_failures} tokens could not be labeled"
        )));
    }
    Ok(())
}

fn decode(input: &Path, scheme: SchemeId, output_path: Option<&Path>) -> Result<()> {
    let rows = read_labeled_rows(open(input)?).map_err(|e| io_failure(input, e))?;
    let mut warnings = 0;
    let sentences: Vec<Vec<(String, String)>> = rows
        .into_iter()
        .map(|sentence| {
            sentence
                .into_iter()
                .map(|row| {
                    let lemma = decode_text(scheme, &row.form, &row.label).unwrap_or_else(|err| {
                        warnings += 1;
                        eprintln!("warning: {} '{}': {err}", row.form, row.label);
                        row.form.clone()
                    });
                    (row.form, lemma)
                })
                .collect()
        })
        .collect();
    let mut writer = output(output_path)?;
    write_lemma_rows(&sentences, &mut writer).map_err(|e| Failure::usage(e.to_string()))?;
    finish(writer, output_path)?;
    eprintln!("{warnings} decode warnings");
    Ok(())
}

#[derive(Serialize)]
struct SchemeStats {
    scheme: SchemeId,
    unique_labels: usize,
    tokens: usize,
    encode_failures: usize,
}

#[derive(Serialize)]
struct StatsReport {
    source: String,
    sentences: usize,
    tokens: usize,
    schemes: Vec<SchemeStats>,
}

fn stats(format: Format, corpus: &Corpus) -> Result<()> {
    let schemes = SchemeId::ALL
        .iter()
        .map(|&scheme| {
            let (labeled, failures) = label_corpus(corpus, scheme);
            SchemeStats {
                scheme,
                unique_labels: unique_labels(&labeled).len(),
                tokens: labeled.token_count(),
                encode_failures: failures.len(),
            }
        })
        .collect();
    let report = StatsReport {
        source: corpus.source_name.clone(),
        sentences: corpus.sentences.len(),
        tokens: token_count(corpus),
        schemes,
    };
    print_report(format, &report, || {
        let mut text = format!("{} sentences, {} tokens\n", report.sentences, report.tokens);
        text.push_str(&format!(
            "{:<10}{:>14}{:>10}{:>10}",
            "scheme", "unique labels", "tokens", "failures"
        ));
        for s in &report.schemes {
            text.push_str(&format!(
                "\n{:<10}{:>14}{:>10}{:>10}",
                s.scheme.as_str(),
                s.unique_labels,
                s.tokens,
                s.encode_failures
            ));
        }
        text
    })
}

/// Read predicted lemmas and pair them with the gold tokens.
///
/// A TSV prediction may list every gold token, or only those with a gold
/// lemma (as `decode` writes them). Forms must agree with the gold forms.
fn read_predictions(gold: &Corpus, path: &Path, format: PredFormat) -> Result<AlignedLemmas> {
    let rows: Vec<Vec<(String, String)>> = match format {
        PredFormat::Tsv => read_lemma_rows(open(path)?).map_err(|e| io_failure(path, e))?,
        PredFormat::Conllu => read_corpus(path, false)?
            .sentences
            .into_iter()
            .map(|s| {
                s.tokens
                    .into_iter()
                    .map(|t| (t.form, t.lemma.unwrap_or_default()))
                    .collect()
            })
            .collect(),
    };
    let shape = |sentences: &[Vec<(String, String)>]| sentences.iter().map(Vec::len).collect::<Vec<_>>();
    let full: Vec<usize> = gold.sentences.iter().map(|s| s.len()).collect();
    let lemmatized: Vec<Vec<bool>> = gold
        .sentences
        .iter()
        .map(|s| s.tokens.iter().map(|t| t.lemma.is_some()).collect())
        .collect();

    let pred: Vec<Vec<String>> = if shape(&rows) == full {
        check_forms(
            gold.sentences
                .iter()
                .map(|s| s.tokens.iter().map(|t| t.form.as_str()).collect()),
            &rows,
        )?;
        rows.into_iter()
            .map(|s| s.into_iter().map(|(_, l)| l).collect())
            .collect()
    } else {
        // Expand predictions for lemmatized tokens to the full gold shape.
        let kept: Vec<Vec<&str>> = gold
            .sentences
            .iter()
            .map(|s| {
                s.tokens
                    .iter()
                    .filter(|t| t.lemma.is_some())
                    .map(|t| t.form.as_str())
                    .collect::<Vec<_>>()
            })
            .filter(|s| !s.is_empty())
            .collect();
        if kept.iter().map(Vec::len).collect::<Vec<_>>() != shape(&rows) {
            return Err(Failure::contract(format!(
                "{}: predictions do not line up with the gold sentences",
                path.display()
            )));
        }
        check_forms(kept.into_iter(), &rows)?;
        let mut rows = rows.into_iter();
        lemmatized
            .iter()
            .map(|flags| {
                if !flags.iter().any(|&f| f) {
                    return vec![String::new(); flags.len()];
                }
                let mut lemmas = rows.next().expect("shapes match").into_iter().map(|(_, l)| l);
                flags
                    .iter()
                    .map(|&f| {
                        if f {
                            lemmas.next().expect("shapes match")
                        } else {
                            String::new()
                        }
                    })
                    .collect()
            })
            .collect()
    };
    AlignedLemmas::new(gold, &pred).map_err(|e| Failure::contract(e.to_string()))
}

fn check_forms<'a>(gold: impl Iterator<Item = Vec<&'a str>>, pred: &[Vec<(String, String)>]) -> Result<()> {
    for (sentence, (g, p)) in gold.zip(pred).enumerate() {
        for (token, (g, (p, _))) in g.iter().zip(p).enumerate() {
            if g != p {
                return Err(Failure::contract(format!(
                    "sentence {}, token {}: gold form '{g}' but prediction for '{p}'",
                    sentence + 1,
                    token + 1
                )));
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct FullEvalReport {
    #[serde(flatten)]
    eval: EvalReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    vocabulary_split: Option<InvOovAccuracy>,
}

fn eval(
    format: Format,
    gold: &Path,
    pred: &Path,
    pred_format: PredFormat,
    train: Option<&Path>,
    adjust: bool,
) -> Result<()> {
    let gold = read_corpus(gold, adjust)?;
    let aligned = read_predictions(&gold, pred, pred_format)?;
    let eval = aligned.report().map_err(|e| Failure::contract(e.to_string()))?;
    let vocabulary_split = match train {
        Some(train) => {
            let train = read_corpus(train, adjust)?;
            let forms: HashSet<String> = train.tokens().map(|t| t.form.clone()).collect();
            let split = inv_oov_accuracy(
                &forms,
                &aligned.flat_forms(),
                &aligned.flat_gold(),
                &aligned.flat_pred(),
            )
            .map_err(|e| Failure::contract(e.to_string()))?;
            Some(split)
        }
        None => None,
    };
    let report = FullEvalReport { eval, vocabulary_split };
    print_report(format, &report, || match &report.vocabulary_split {
        Some(split) => format!("{}\n{split}", report.eval),
        None => report.eval.to_string(),
    })
}

fn predict(input: &Path, model_path: &Path, output_path: Option<&Path>, format: PredFormat) -> Result<()> {
    let text = fs::read_to_string(model_path).map_err(|e| io_failure(model_path, e))?;
    let model = BaselineModel::from_json(&text).map_err(|e| io_failure(model_path, e))?;
    let mut corpus = read_corpus(input, false)?;
    let run = model.predict_corpus(&corpus);
    let mut writer = output(output_path)?;
    let written = match format {
        PredFormat::Tsv => {
            let rows: Vec<Vec<(&str, &str)>> = corpus
                .sentences
                .iter()
                .zip(&run.lemmas)
                .map(|(s, lemmas)| {
                    s.tokens
                        .iter()
                        .zip(lemmas)
                        .map(|(t, l)| (t.form.as_str(), l.as_str()))
                        .collect()
                })
                .collect();
            write_lemma_rows(&rows, &mut writer)
        }
        PredFormat::Conllu => {
            for (sentence, lemmas) in corpus.sentences.iter_mut().zip(&run.lemmas) {
                for (token, lemma) in sentence.tokens.iter_mut().zip(lemmas) {
                    token.lemma = Some(lemma.clone());
                }
            }
            write_conllu(&corpus, &mut writer)
        }
    };
    written.map_err(|e| Failure::usage(e.to_string()))?;
    finish(writer, output_path)?;
    eprintln!(
        "{} tokens, {} fallbacks, {} decode failures",
        token_count(&corpus),
        run.fallbacks,
        run.decode_failures
    );
    Ok(())
}

fn render_comparison(report: &ComparisonReport) -> String {
    let mut text = format!(
        "{:<10}{:>8}{:>10}{:>10}{:>10}{:>10}{:>10}\n",
        "scheme", "labels", "word acc", "sent acc", "oov word", "oov ses", "dec fail"
    );
    for r in &report.schemes {
        text.push_str(&format!(
            "{:<10}{:>8}{:>10.4}{:>10.4}{:>9.2}%{:>9.2}%{:>10}\n",
            r.scheme.as_str(),
            r.train_unique_labels,
            r.baseline.word_accuracy,
            r.baseline.sentence_accuracy,
            r.oov.oov_word_rate * 100.0,
            r.oov.oov_ses_rate * 100.0,
            r.baseline_decode_failures
        ));
    }
    for t in &report.mcnemar {
        text.push_str(&format!(
            "\n{} vs {}: word p = {:.6} (b = {}, c = {}), sentence p = {:.6} (b = {}, c = {})",
            t.a, t.b, t.word.p_value, t.word.b, t.word.c, t.sentence.p_value, t.sentence.b, t.sentence.c
        ));
    }
    text
}
