//! Shortest edit script (SES) induction for lemmatization.
//!
//! Three label schemes turn a (wordform, lemma) pair into a classification
//! label and back:
//!
//! * [`udpipe`]: casing script plus prefix/suffix edits around a shared root.
//! * [`ixapipes`]: indexed edits counted from the end of the wordform.
//! * [`morpheus`]: one edit token per wordform character.
//!
//! The remaining modules read and write treebanks, induce labeled corpora,
//! compute label-vocabulary and out-of-vocabulary statistics, evaluate
//! lemmatizers and run a most-frequent-label baseline.

pub mod alignment;
pub mod baseline;
pub mod casing;
pub mod compare;
pub mod conllu;
pub mod error;
pub mod labeled;
pub mod metrics;
pub mod model;
pub mod ses;

pub mod ixapipes;
pub mod morpheus;
pub mod udpipe;

pub use error::{BaselineError, CompareError, CorpusError, DecodeError, EncodeError, EvalError, LabelError};
pub use model::{token_count, Corpus, SchemeId, Sentence, SesLabel, Token};
pub use ses::{decode, decode_text, encode, EditProgram};
