//! Morpheus-style edit scripts: one token per wordform character.
//!
//! Tokens are `s` (same), `d` (delete), `l` (lowercase) and `r_<str>`
//! (replace by one or more characters), joined by `|`. Insertions never get
//! a token of their own; a run of inserted characters is merged into the
//! neighbouring replace token, which keeps labels total for lemmas longer
//! than their wordforms.

use std::fmt;
use std::str::FromStr;

use crate::alignment::{levenshtein_align, AlignOp};
use crate::casing::{case_class, to_lower, CaseClass};
use crate::error::{DecodeError, EncodeError, LabelError};
use crate::model::{SchemeId, SesLabel};

const TOKEN_SEP: char = '|';

#[derive(Clone, Debug, Eq, Hash, PartialEq)]
pub enum MorpheusToken {
    Same,
    Delete,
    Lower,
    Replace(String),
}

#[derive(Clone, Debug, Eq, Hash, PartialEq)]
pub struct MorpheusLabel {
    tokens: Vec<MorpheusToken>,
}

impl MorpheusLabel {
    pub fn tokens(&self) -> &[MorpheusToken] {
        &self.tokens
    }

    pub fn encode(form: &str, lemma: &str) -> Result<Self, EncodeError> {
        if form.is_empty() || lemma.is_empty() {
            return Err(EncodeError::EmptyInput);
        }
        let form_chars: Vec<char> = form.chars().collect();
        let lemma_chars: Vec<char> = lemma.chars().collect();
        let alignment = levenshtein_align(&form_chars, &lemma_chars);

        // (token, form character) pairs; payloads of folded tokens grow in place.
        let mut tokens: Vec<(MorpheusToken, char)> = Vec::with_capacity(form_chars.len());
        let mut leading = String::new();
        for op in alignment.ops {
            let (token, c) = match op {
                AlignOp::Insert(x) => {
                    match tokens.last_mut() {
                        None => leading.push(x),
                        Some((MorpheusToken::Replace(payload), _)) => payload.push(x),
                        Some((token @ MorpheusToken::Same, c)) => {
                            *token = MorpheusToken::Replace([*c, x].iter().collect())
                        }
                        Some((token, _)) => *token = MorpheusToken::Replace(x.to_string()),
                    }
                    continue;
                }
                AlignOp::Match(c) => (MorpheusToken::Same, c),
                AlignOp::Delete(c) => (MorpheusToken::Delete, c),
                AlignOp::Replace { from, to } => (MorpheusToken::Replace(to.to_string()), from),
            };
            let token = if leading.is_empty() {
                token
            } else {
                let mut payload = std::mem::take(&mut leading);
                match token {
                    MorpheusToken::Same => payload.push(c),
                    MorpheusToken::Replace(s) => payload.push_str(&s),
                    _ => {}
                }
                MorpheusToken::Replace(payload)
            };
            tokens.push((token, c));
        }

        if tokens
            .iter()
            .any(|(t, _)| matches!(t, MorpheusToken::Replace(s) if s.contains(TOKEN_SEP)))
        {
            return Err(EncodeError::UnencodableChar {
                scheme: SchemeId::Morpheus,
                ch: TOKEN_SEP,
            });
        }

        let tokens = tokens
            .into_iter()
            .map(|(token, c)| match token {
                MorpheusToken::Replace(ref s) if is_lowering(c, s) => MorpheusToken::Lower,
                other => other,
            })
            .collect();
        Ok(MorpheusLabel { tokens })
    }

    pub fn apply(&self, form: &str) -> Result<String, DecodeError> {
        let chars = form.chars().count();
        if chars != self.tokens.len() {
            return Err(DecodeError::ArityMismatch {
                tokens: self.tokens.len(),
                chars,
            });
        }
        let mut lemma = String::with_capacity(form.len() + 4);
        for (c, token) in form.chars().zip(&self.tokens) {
            match token {
                MorpheusToken::Same => lemma.push(c),
                MorpheusToken::Lower => lemma.push(to_lower(c)),
                MorpheusToken::Delete => {}
                MorpheusToken::Replace(s) => lemma.push_str(s),
            }
        }
        Ok(lemma)
    }
}

fn is_lowering(c: char, payload: &str) -> bool {
    let mut it = payload.chars();
    match (it.next(), it.next()) {
        (Some(x), None) => case_class(c) == CaseClass::Upper && to_lower(c) == x,
        _ => false,
    }
}

impl fmt::Display for MorpheusLabel {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        for (i, token) in self.tokens.iter().enumerate() {
            if i > 0 {
                write!(f, "{TOKEN_SEP}")?;
            }
            match token {
                MorpheusToken::Same => f.write_str("s")?,
                MorpheusToken::Delete => f.write_str("d")?,
                MorpheusToken::Lower => f.write_str("l")?,
                MorpheusToken::Replace(s) => write!(f, "r_{s}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for MorpheusLabel {
    type Err = LabelError;

    fn from_str(label: &str) -> Result<Self, Self::Err> {
        let tokens = label
            .split(TOKEN_SEP)
            .map(|token| match token {
                "s" => Ok(MorpheusToken::Same),
                "d" => Ok(MorpheusToken::Delete),
                "l" => Ok(MorpheusToken::Lower),
                _ => match token.strip_prefix("r_") {
                    Some(payload) if !payload.is_empty() => Ok(MorpheusToken::Replace(payload.to_owned())),
                    _ => Err(LabelError::malformed(SchemeId::Morpheus, label, "unknown token")),
                },
            })
            .collect::<Result<_, _>>()?;
        Ok(MorpheusLabel { tokens })
    }
}

pub fn encode_morpheus(form: &str, lemma: &str) -> Result<SesLabel, EncodeError> {
    let label = MorpheusLabel::encode(form, lemma)?;
    Ok(SesLabel::from_encoder(SchemeId::Morpheus, label.to_string()))
}

pub fn decode_morpheus(form: &str, label: &str) -> Result<String, DecodeError> {
    label.parse::<MorpheusLabel>()?.apply(form)
}
