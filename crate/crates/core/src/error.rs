use std::io;

use thiserror::Error;

use crate::model::SchemeId;

/// A label that does not follow its scheme's grammar.
#[derive(Clone, Debug, Eq, Error, PartialEq)]
pub enum LabelError {
    #[error("unknown scheme '{0}'")]
    UnknownScheme(String),

    #[error("malformed {scheme} label '{label}': {reason}")]
    Malformed {
        scheme: SchemeId,
        label: String,
        reason: &'static str,
    },
}

impl LabelError {
    pub(crate) fn malformed(scheme: SchemeId, label: &str, reason: &'static str) -> Self {
        LabelError::Malformed {
            scheme,
            label: label.to_owned(),
            reason,
        }
    }
}

#[derive(Clone, Debug, Eq, Error, PartialEq)]
pub enum EncodeError {
    #[error("wordform and lemma must be non-empty")]
    EmptyInput,

    /// The lemma contains a character that the label grammar reserves.
    #[error("{scheme} label cannot carry the character {ch:?}")]
    UnencodableChar { scheme: SchemeId, ch: char },
}

/// Failure to apply a label to a wordform.
///
/// Apart from [`DecodeError::Parse`], these signal a label that was
/// predicted for an incompatible wordform.
#[derive(Clone, Debug, Eq, Error, PartialEq)]
pub enum DecodeError {
    #[error(transparent)]
    Parse(#[from] LabelError),

    #[error("label consumes {consumed} characters but the wordform has {len}")]
    LengthMismatch { consumed: usize, len: usize },

    #[error("label has {tokens} tokens but the wordform has {chars} characters")]
    ArityMismatch { tokens: usize, chars: usize },

    #[error("edit index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("edit at index {index} expects {expected:?} but found {found:?}")]
    CharMismatch { index: usize, expected: char, found: char },
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error(transparent)]
    Io(#[from] io::Error),

    #[error("line {line}: {message}")]
    Format { line: usize, message: String },

    #[error("corpus is labeled with {found}, expected {expected}")]
    SchemeMismatch { expected: SchemeId, found: SchemeId },
}

#[derive(Clone, Debug, Eq, Error, PartialEq)]
pub enum EvalError {
    #[error("gold has {gold} items, prediction has {pred}")]
    LengthMismatch { gold: usize, pred: usize },

    #[error("nothing to evaluate")]
    EmptyEval,

    #[error("sentence {sentence}: gold has {gold} tokens, prediction has {pred}")]
    StructureMismatch { sentence: usize, gold: usize, pred: usize },

    #[error("train corpus uses {train}, test corpus uses {test}")]
    SchemeMismatch { train: SchemeId, test: SchemeId },
}

#[derive(Clone, Debug, Eq, Error, PartialEq)]
pub enum BaselineError {
    #[error("cannot train on an empty corpus")]
    EmptyCorpus,
}

#[derive(Clone, Debug, Eq, Error, PartialEq)]
pub enum CompareError {
    #[error("{scheme}: {source}")]
    Baseline { scheme: SchemeId, source: BaselineError },

    #[error("{scheme}: {source}")]
    Eval { scheme: SchemeId, source: EvalError },
}
