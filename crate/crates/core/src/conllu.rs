//! CoNLL-U reading and writing.
//!
//! Only the columns needed for lemmatization are kept: ID, FORM, LEMMA and
//! UPOS. Multiword token ranges (`3-4`) and empty nodes (`5.1`) are skipped.

use std::io::{self, BufRead, Write};

use crate::casing::{case_class, to_upper, CaseClass};
use crate::error::CorpusError;
use crate::model::{Corpus, Sentence, Token};

const COLUMNS: usize = 10;
const EMPTY: &str = "_";
const PROPER_NOUN: &str = "PROPN";

pub fn parse_conllu<R: BufRead>(reader: R, source_name: &str) -> Result<Corpus, CorpusError> {
    let mut sentences = Vec::new();
    let mut current = Sentence::default();

    for (line_idx, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim_end_matches('\r');
        let line_no = line_idx + 1;

        if line.trim().is_empty() {
            if !current.tokens.is_empty() {
                sentences.push(std::mem::take(&mut current));
            } else {
                current.comments.clear();
            }
            continue;
        }
        if line.starts_with('#') {
            current.comments.push(line.to_owned());
            continue;
        }

        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() < COLUMNS {
            return Err(CorpusError::Format {
                line: line_no,
                message: format!("expected {COLUMNS} tab-separated fields, found {}", fields.len()),
            });
        }
        let id = fields[0];
        if id.contains('-') || id.contains('.') {
            continue;
        }
        let index: usize = id.parse().map_err(|_| CorpusError::Format {
            line: line_no,
            message: format!("invalid token id '{id}'"),
        })?;
        if let Some(prev) = current.tokens.last() {
            if index <= prev.index {
                return Err(CorpusError::Format {
                    line: line_no,
                    message: format!("token id {index} does not follow {}", prev.index),
                });
            }
        }
        let form = fields[1];
        if form.is_empty() {
            return Err(CorpusError::Format {
                line: line_no,
                message: "empty FORM".to_owned(),
            });
        }
        let lemma = match fields[2] {
            EMPTY | "" => None,
            lemma => Some(lemma.to_owned()),
        };
        let upos = match fields[3] {
            EMPTY => "",
            upos => upos,
        };
        current.tokens.push(Token::new(index, form, lemma, upos));
    }
    if !current.tokens.is_empty() {
        sentences.push(current);
    }

    Ok(Corpus::new(source_name, sentences))
}

pub fn parse_conllu_str(text: &str, source_name: &str) -> Result<Corpus, CorpusError> {
    parse_conllu(text.as_bytes(), source_name)
}

/// Write the corpus as CoNLL-U. Columns that are not modelled are written as `_`.
pub fn write_conllu<W: Write>(corpus: &Corpus, mut writer: W) -> io::Result<()> {
    for sentence in &corpus.sentences {
        for comment in &sentence.comments {
            writeln!(writer, "{comment}")?;
        }
        for token in &sentence.tokens {
            let lemma = token.lemma.as_deref().unwrap_or(EMPTY);
            let upos = if token.upos.is_empty() { EMPTY } else { &token.upos };
            writeln!(
                writer,
                "{}\t{}\t{lemma}\t{upos}\t_\t_\t_\t_\t_\t_",
                token.index, token.form
            )?;
        }
        writeln!(writer)?;
    }
    Ok(())
}

/// Uppercase the first character of proper-noun lemmas that start lowercase.
///
/// Some treebanks lowercase every lemma, which hides the casing the
/// case-sensitive edit scripts are supposed to learn.
pub fn adjust_propn_lemmas(corpus: &Corpus) -> Corpus {
    let mut adjusted = corpus.clone();
    for token in adjusted.sentences.iter_mut().flat_map(|s| s.tokens.iter_mut()) {
        if token.upos != PROPER_NOUN {
            continue;
        }
        if let Some(lemma) = token.lemma.as_mut() {
            let mut chars = lemma.chars();
            if let Some(first) = chars.next() {
                if case_class(first) == CaseClass::Lower {
                    *lemma = std::iter::once(to_upper(first)).chain(chars).collect();
                }
            }
        }
    }
    adjusted
}
