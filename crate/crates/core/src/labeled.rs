//! Corpora annotated with edit-script labels, and their TSV format.
//!
//! A labeled file has one `form<TAB>lemma<TAB>label` line per token and a
//! blank line after every sentence.

use std::io::{self, BufRead, Write};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::CorpusError;
use crate::model::{Corpus, SchemeId, SesLabel};
use crate::ses;

#[derive(Clone, Debug, Eq, PartialEq)]
pub struct LabeledToken {
    form: String,
    gold_lemma: String,
    label: SesLabel,
}

impl LabeledToken {
    /// Pair a token with its label, checking that the label decodes to the
    /// gold lemma.
    pub fn new(form: String, gold_lemma: String, label: SesLabel) -> Result<Self, String> {
        match ses::decode(&form, &label) {
            Ok(lemma) if lemma == gold_lemma => Ok(LabeledToken {
                form,
                gold_lemma,
                label,
            }),
            Ok(lemma) => Err(format!("label '{label}' decodes to '{lemma}', expected '{gold_lemma}'")),
            Err(err) => Err(format!("label '{label}' does not decode: {err}")),
        }
    }

    pub fn form(&self) -> &str {
        &self.form
    }

    pub fn gold_lemma(&self) -> &str {
        &self.gold_lemma
    }

    pub fn label(&self) -> &SesLabel {
        &self.label
    }
}

#[derive(Clone, Debug, Eq, PartialEq)]
pub struct LabeledCorpus {
    pub scheme: SchemeId,
    pub sentences: Vec<Vec<LabeledToken>>,
}

impl LabeledCorpus {
    pub fn tokens(&self) -> impl Iterator<Item = &LabeledToken> {
        self.sentences.iter().flatten()
    }

    pub fn token_count(&self) -> usize {
        self.sentences.iter().map(Vec::len).sum()
    }
}

/// A token that could not be labeled.
#[derive(Clone, Debug, Eq, PartialEq, Serialize)]
pub struct LabelFailure {
    pub sentence_index: usize,
    pub token_index: usize,
    pub form: String,
    pub reason: String,
}

/// Encode every lemmatized token of `corpus` under `scheme`.
///
/// Tokens without a gold lemma are skipped. Each label is decoded again and
/// tokens whose label does not reproduce the gold lemma are reported as
/// failures instead of being included. Sentences are processed in parallel;
/// the output keeps input order.
pub fn label_corpus(corpus: &Corpus, scheme: SchemeId) -> (LabeledCorpus, Vec<LabelFailure>) {
    let per_sentence: Vec<(Vec<LabeledToken>, Vec<LabelFailure>)> = corpus
        .sentences
        .par_iter()
        .enumerate()
        .map(|(sentence_index, sentence)| {
            let mut tokens = Vec::with_capacity(sentence.len());
            let mut failures = Vec::new();
            for (token_index, token) in sentence.tokens.iter().enumerate() {
                let Some(lemma) = &token.lemma else { continue };
                let result = ses::encode(scheme, &token.form, lemma)
                    .map_err(|err| err.to_string())
                    .and_then(|label| LabeledToken::new(token.form.clone(), lemma.clone(), label));
                match result {
                    Ok(labeled) => tokens.push(labeled),
                    Err(reason) => failures.push(LabelFailure {
                        sentence_index,
                        token_index,
                        form: token.form.clone(),
                        reason,
                    }),
                }
            }
            (tokens, failures)
        })
        .collect();

    let mut sentences = Vec::with_capacity(per_sentence.len());
    let mut failures = Vec::new();
    for (tokens, sentence_failures) in per_sentence {
        if !tokens.is_empty() {
            sentences.push(tokens);
        }
        failures.extend(sentence_failures);
    }
    (LabeledCorpus { scheme, sentences }, failures)
}

pub fn write_labeled<W: Write>(labeled: &LabeledCorpus, mut writer: W) -> io::Result<()> {
    for sentence in &labeled.sentences {
        for token in sentence {
            writeln!(writer, "{}\t{}\t{}", token.form, token.gold_lemma, token.label)?;
        }
        writeln!(writer)?;
    }
    Ok(())
}

/// An unvalidated row of a labeled file.
#[derive(Clone, Debug, Eq, PartialEq)]
pub struct LabeledRow {
    pub form: String,
    pub lemma: String,
    pub label: String,
}

/// Read the rows of a labeled file without validating labels.
pub fn read_labeled_rows<R: BufRead>(reader: R) -> Result<Vec<Vec<LabeledRow>>, CorpusError> {
    let mut sentences = Vec::new();
    let mut current = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim_end_matches('\r');
        if line.is_empty() {
            if !current.is_empty() {
                sentences.push(std::mem::take(&mut current));
            }
            continue;
        }
        let mut fields = line.split('\t');
        match (fields.next(), fields.next(), fields.next(), fields.next()) {
            (Some(form), Some(lemma), Some(label), None) if !form.is_empty() => current.push(LabeledRow {
                form: form.to_owned(),
                lemma: lemma.to_owned(),
                label: label.to_owned(),
            }),
            _ => {
                return Err(CorpusError::Format {
                    line: idx + 1,
                    message: "expected form<TAB>lemma<TAB>label".to_owned(),
                })
            }
        }
    }
    if !current.is_empty() {
        sentences.push(current);
    }
    Ok(sentences)
}

/// Read a labeled file, validating every label against its gold lemma.
pub fn parse_labeled<R: BufRead>(reader: R, scheme: SchemeId) -> Result<LabeledCorpus, CorpusError> {
    let mut line = 0;
    let mut sentences = Vec::new();
    for rows in read_labeled_rows(reader)? {
        let mut tokens = Vec::with_capacity(rows.len());
        for row in rows {
            line += 1;
            let invalid = |message: String| CorpusError::Format { line, message };
            let label = SesLabel::parse(scheme, &row.label).map_err(|err| invalid(err.to_string()))?;
            tokens.push(LabeledToken::new(row.form, row.lemma, label).map_err(invalid)?);
        }
        line += 1;
        sentences.push(tokens);
    }
    Ok(LabeledCorpus { scheme, sentences })
}

/// Write `form<TAB>lemma` lines, one blank line after each sentence.
pub fn write_lemma_rows<W, F, L>(sentences: &[Vec<(F, L)>], mut writer: W) -> io::Result<()>
where
    W: Write,
    F: AsRef<str>,
    L: AsRef<str>,
{
    for sentence in sentences {
        for (form, lemma) in sentence {
            writeln!(writer, "{}\t{}", form.as_ref(), lemma.as_ref())?;
        }
        writeln!(writer)?;
    }
    Ok(())
}

/// Read `form<TAB>lemma` lines grouped into sentences by blank lines.
pub fn read_lemma_rows<R: BufRead>(reader: R) -> Result<Vec<Vec<(String, String)>>, CorpusError> {
    let mut sentences = Vec::new();
    let mut current = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim_end_matches('\r');
        if line.is_empty() {
            if !current.is_empty() {
                sentences.push(std::mem::take(&mut current));
            }
            continue;
        }
        match line.split_once('\t') {
            Some((form, lemma)) if !form.is_empty() && !lemma.contains('\t') => {
                current.push((form.to_owned(), lemma.to_owned()))
            }
            _ => {
                return Err(CorpusError::Format {
                    line: idx + 1,
                    message: "expected form<TAB>lemma".to_owned(),
                })
            }
        }
    }
    if !current.is_empty() {
        sentences.push(current);
    }
    Ok(sentences)
}

pub fn failures_to_json(failures: &[LabelFailure]) -> String {
    serde_json::to_string_pretty(failures).expect("failure records serialize")
}
