//! Scheme-independent encode/decode entry points.

use crate::error::{DecodeError, EncodeError, LabelError};
use crate::ixapipes::IxaLabel;
use crate::model::{SchemeId, SesLabel};
use crate::morpheus::MorpheusLabel;
use crate::udpipe::UdpipeLabel;

/// A parsed label in its scheme-specific form.
#[derive(Clone, Debug, Eq, PartialEq)]
pub enum EditProgram {
    Udpipe(UdpipeLabel),
    Ixapipes(IxaLabel),
    Morpheus(MorpheusLabel),
}

impl EditProgram {
    pub fn apply(&self, form: &str) -> Result<String, DecodeError> {
        match self {
            EditProgram::Udpipe(l) => l.apply(form),
            EditProgram::Ixapipes(l) => l.apply(form),
            EditProgram::Morpheus(l) => l.apply(form),
        }
    }
}

pub fn parse_program(scheme: SchemeId, text: &str) -> Result<EditProgram, LabelError> {
    Ok(match scheme {
        SchemeId::Udpipe => EditProgram::Udpipe(text.parse()?),
        SchemeId::Ixapipes => EditProgram::Ixapipes(text.parse()?),
        SchemeId::Morpheus => EditProgram::Morpheus(text.parse()?),
    })
}

/// Encode a (wordform, lemma) pair under `scheme`.
pub fn encode(scheme: SchemeId, form: &str, lemma: &str) -> Result<SesLabel, EncodeError> {
    match scheme {
        SchemeId::Udpipe => crate::udpipe::encode_udpipe(form, lemma),
        SchemeId::Ixapipes => crate::ixapipes::encode_ixapipes(form, lemma),
        SchemeId::Morpheus => crate::morpheus::encode_morpheus(form, lemma),
    }
}

/// Apply `label` to `form`, producing the lemma.
pub fn decode(form: &str, label: &SesLabel) -> Result<String, DecodeError> {
    decode_text(label.scheme(), form, label.text())
}

/// Like [`decode`] for label text that has not been validated yet.
pub fn decode_text(scheme: SchemeId, form: &str, label: &str) -> Result<String, DecodeError> {
    parse_program(scheme, label)?.apply(form)
}
