//! Tokens, sentences, corpora and edit-script labels.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::LabelError;

/// A treebank token.
#[derive(Clone, Debug, Eq, PartialEq)]
pub struct Token {
    /// 1-based position within the sentence.
    pub index: usize,
    pub form: String,
    /// Gold lemma, absent when the treebank row carries `_`.
    pub lemma: Option<String>,
    /// Universal POS tag, possibly empty.
    pub upos: String,
}

impl Token {
    pub fn new(index: usize, form: impl Into<String>, lemma: Option<String>, upos: impl Into<String>) -> Self {
        Token {
            index,
            form: form.into(),
            lemma,
            upos: upos.into(),
        }
    }
}

#[derive(Clone, Debug, Default, Eq, PartialEq)]
pub struct Sentence {
    pub comments: Vec<String>,
    pub tokens: Vec<Token>,
}

impl Sentence {
    /// Build a sentence from `(form, lemma, upos)` triples, numbering tokens from 1.
    pub fn from_triples<'a, I>(triples: I) -> Self
    where
        I: IntoIterator<Item = (&'a str, &'a str, &'a str)>,
    {
        let tokens = triples
            .into_iter()
            .enumerate()
            .map(|(i, (form, lemma, upos))| Token::new(i + 1, form, Some(lemma.to_owned()), upos))
            .collect();
        Sentence {
            comments: Vec::new(),
            tokens,
        }
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

#[derive(Clone, Debug, Default, Eq, PartialEq)]
pub struct Corpus {
    pub source_name: String,
    pub sentences: Vec<Sentence>,
}

impl Corpus {
    pub fn new(source_name: impl Into<String>, sentences: Vec<Sentence>) -> Self {
        Corpus {
            source_name: source_name.into(),
            sentences,
        }
    }

    pub fn tokens(&self) -> impl Iterator<Item = &Token> {
        self.sentences.iter().flat_map(|s| s.tokens.iter())
    }
}

/// Total number of retained tokens in the corpus.
pub fn token_count(corpus: &Corpus) -> usize {
    corpus.sentences.iter().map(Sentence::len).sum()
}

/// The edit-script induction method a label belongs to.
#[derive(Clone, Copy, Debug, Deserialize, Eq, Hash, Ord, PartialEq, PartialOrd, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SchemeId {
    Udpipe,
    Ixapipes,
    Morpheus,
}

impl SchemeId {
    pub const ALL: [SchemeId; 3] = [SchemeId::Udpipe, SchemeId::Ixapipes, SchemeId::Morpheus];

    pub fn as_str(self) -> &'static str {
        match self {
            SchemeId::Udpipe => "udpipe",
            SchemeId::Ixapipes => "ixapipes",
            SchemeId::Morpheus => "morpheus",
        }
    }
}

impl fmt::Display for SchemeId {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SchemeId {
    type Err = LabelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "udpipe" => Ok(SchemeId::Udpipe),
            "ixapipes" => Ok(SchemeId::Ixapipes),
            "morpheus" => Ok(SchemeId::Morpheus),
            _ => Err(LabelError::UnknownScheme(s.to_owned())),
        }
    }
}

/// A serialized edit-script label tagged with its scheme.
///
/// Labels are only constructed through [`SesLabel::parse`] or by the
/// encoders, so the text always satisfies its scheme's grammar.
#[derive(Clone, Debug, Eq, Hash, Ord, PartialEq, PartialOrd)]
pub struct SesLabel {
    scheme: SchemeId,
    text: String,
}

impl SesLabel {
    pub(crate) fn from_encoder(scheme: SchemeId, text: String) -> Self {
        debug_assert!(!text.is_empty());
        SesLabel { scheme, text }
    }

    /// Validate `text` against the grammar of `scheme`.
    pub fn parse(scheme: SchemeId, text: &str) -> Result<Self, LabelError> {
        crate::ses::parse_program(scheme, text)?;
        Ok(SesLabel {
            scheme,
            text: text.to_owned(),
        })
    }

    pub fn scheme(&self) -> SchemeId {
        self.scheme
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn into_text(self) -> String {
        self.text
    }
}

impl fmt::Display for SesLabel {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str(&self.text)
    }
}
