//! Chrupała-style edit scripts as used by IXA pipes.
//!
//! Edits are indexed from the end of the wordform: index 0 is its last
//! character. A label is `O` for identity, or an optional `1` marker
//! (lowercase the first character) followed by `R<i><old><new>`,
//! `D<i><old>` and `I<i><new>` tokens listed by decreasing index, e.g.
//! `R1ioD0d` for *did → do*.
//!
//! Tokens are applied in label order to the reversed wordform. Within one
//! index the replacement or deletion comes first and insertions follow in
//! reverse order, so every token addresses positions that earlier tokens
//! have not shifted.

use std::fmt;
use std::str::FromStr;

use crate::alignment::{levenshtein_align, AlignOp};
use crate::casing::{case_class, to_lower, CaseClass};
use crate::error::{DecodeError, EncodeError, LabelError};
use crate::model::{SchemeId, SesLabel};

#[derive(Clone, Copy, Debug, Eq, Hash, PartialEq)]
pub enum IxaEdit {
    Replace { index: usize, old: char, new: char },
    Delete { index: usize, old: char },
    Insert { index: usize, new: char },
}

impl IxaEdit {
    pub fn index(self) -> usize {
        match self {
            IxaEdit::Replace { index, .. } | IxaEdit::Delete { index, .. } | IxaEdit::Insert { index, .. } => index,
        }
    }

    fn check(buf: &[char], index: usize, old: char) -> Result<(), DecodeError> {
        match buf.get(index) {
            None => Err(DecodeError::IndexOutOfRange { index, len: buf.len() }),
            Some(&found) if found != old => Err(DecodeError::CharMismatch {
                index,
                expected: old,
                found,
            }),
            Some(_) => Ok(()),
        }
    }

    fn apply(self, buf: &mut Vec<char>) -> Result<(), DecodeError> {
        match self {
            IxaEdit::Replace { index, old, new } => {
                Self::check(buf, index, old)?;
                buf[index] = new;
            }
            IxaEdit::Delete { index, old } => {
                Self::check(buf, index, old)?;
                buf.remove(index);
            }
            IxaEdit::Insert { index, new } => {
                if index > buf.len() {
                    return Err(DecodeError::IndexOutOfRange { index, len: buf.len() });
                }
                buf.insert(index, new);
            }
        }
        Ok(())
    }
}

impl fmt::Display for IxaEdit {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        match *self {
            IxaEdit::Replace { index, old, new } => write!(f, "R{index}{old}{new}"),
            IxaEdit::Delete { index, old } => write!(f, "D{index}{old}"),
            IxaEdit::Insert { index, new } => write!(f, "I{index}{new}"),
        }
    }
}

#[derive(Clone, Debug, Default, Eq, Hash, PartialEq)]
pub struct IxaLabel {
    pub lower_first: bool,
    pub edits: Vec<IxaEdit>,
}

impl IxaLabel {
    pub fn is_identity(&self) -> bool {
        !self.lower_first && self.edits.is_empty()
    }

    pub fn encode(form: &str, lemma: &str) -> Result<Self, EncodeError> {
        if form.is_empty() || lemma.is_empty() {
            return Err(EncodeError::EmptyInput);
        }
        let mut form_chars: Vec<char> = form.chars().collect();
        let lemma_chars: Vec<char> = lemma.chars().collect();

        let first = form_chars[0];
        let lower_first = case_class(first) == CaseClass::Upper && lemma_chars[0] == to_lower(first);
        if lower_first {
            form_chars[0] = to_lower(first);
        }

        // Reading the forward alignment backwards gives an optimal alignment
        // of the reversed strings.
        let alignment = levenshtein_align(&form_chars, &lemma_chars).reversed();
        let mut edits = Vec::new();
        let mut index = 0;
        for op in alignment.ops {
            match op {
                AlignOp::Match(_) => index += 1,
                AlignOp::Replace { from, to } => {
                    edits.push(IxaEdit::Replace {
                        index,
                        old: from,
                        new: to,
                    });
                    index += 1;
                }
                AlignOp::Delete(c) => {
                    edits.push(IxaEdit::Delete { index, old: c });
                    index += 1;
                }
                AlignOp::Insert(c) => edits.push(IxaEdit::Insert { index, new: c }),
            }
        }
        edits.reverse();
        Ok(IxaLabel { lower_first, edits })
    }

    pub fn apply(&self, form: &str) -> Result<String, DecodeError> {
        if self.is_identity() {
            return Ok(form.to_owned());
        }
        let mut buf: Vec<char> = form.chars().collect();
        if self.lower_first {
            if let Some(c) = buf.first_mut() {
                *c = to_lower(*c);
            }
        }
        buf.reverse();
        for edit in &self.edits {
            edit.apply(&mut buf)?;
        }
        Ok(buf.into_iter().rev().collect())
    }
}

impl fmt::Display for IxaLabel {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("O");
        }
        if self.lower_first {
            f.write_str("1")?;
        }
        for edit in &self.edits {
            write!(f, "{edit}")?;
        }
        Ok(())
    }
}

/// Parses a token sequence. Indices and characters are not delimited, so a
/// digit character directly after an index is ambiguous; the parser
/// backtracks over index lengths (shortest first) until the whole sequence
/// parses.
struct TokenParser<'a> {
    chars: &'a [char],
    dead: Vec<bool>,
}

impl TokenParser<'_> {
    fn parse(&mut self, pos: usize) -> Option<Vec<IxaEdit>> {
        if pos == self.chars.len() {
            return Some(Vec::new());
        }
        if self.dead[pos] {
            return None;
        }
        let kind = self.chars[pos];
        let arity = match kind {
            'R' => 2,
            'D' | 'I' => 1,
            _ => {
                self.dead[pos] = true;
                return None;
            }
        };
        let digits = self.chars[pos + 1..].iter().take_while(|c| c.is_ascii_digit()).count();
        for len in 1..=digits {
            let start = pos + 1 + len;
            if start + arity > self.chars.len() {
                break;
            }
            let index: usize = match self.chars[pos + 1..start].iter().collect::<String>().parse() {
                Ok(index) => index,
                Err(_) => break,
            };
            let edit = match kind {
                'R' => IxaEdit::Replace {
                    index,
                    old: self.chars[start],
                    new: self.chars[start + 1],
                },
                'D' => IxaEdit::Delete {
                    index,
                    old: self.chars[start],
                },
                _ => IxaEdit::Insert {
                    index,
                    new: self.chars[start],
                },
            };
            if let Some(mut rest) = self.parse(start + arity) {
                rest.insert(0, edit);
                return Some(rest);
            }
        }
        self.dead[pos] = true;
        None
    }
}

impl FromStr for IxaLabel {
    type Err = LabelError;

    fn from_str(label: &str) -> Result<Self, Self::Err> {
        if label == "O" {
            return Ok(IxaLabel::default());
        }
        let (lower_first, body) = match label.strip_prefix('1') {
            Some(rest) => (true, rest),
            None if label.is_empty() => return Err(LabelError::malformed(SchemeId::Ixapipes, label, "empty label")),
            None => (false, label),
        };
        let chars: Vec<char> = body.chars().collect();
        let mut parser = TokenParser {
            dead: vec![false; chars.len() + 1],
            chars: &chars,
        };
        let edits = parser
            .parse(0)
            .ok_or_else(|| LabelError::malformed(SchemeId::Ixapipes, label, "invalid edit tokens"))?;
        Ok(IxaLabel { lower_first, edits })
    }
}

pub fn encode_ixapipes(form: &str, lemma: &str) -> Result<SesLabel, EncodeError> {
    let label = IxaLabel::encode(form, lemma)?;
    Ok(SesLabel::from_encoder(SchemeId::Ixapipes, label.to_string()))
}

pub fn decode_ixapipes(form: &str, label: &str) -> Result<String, DecodeError> {
    label.parse::<IxaLabel>()?.apply(form)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn enc(form: &str, lemma: &str) -> String {
        encode_ixapipes(form, lemma).unwrap().into_text()
    }

    #[test]
    fn encodes_reference_pairs() {
        assert_eq!(enc("cats", "cat"), "D0s");
        assert_eq!(enc("birds", "bird"), "D0s");
        assert_eq!(enc("did", "do"), "R1ioD0d");
        assert_eq!(enc("You", "you"), "1");
        assert_eq!(enc("Wolak", "Wolak"), "O");
        assert_eq!(enc("folklorearen", "folklore"), "D3aD2rD1eD0n");
    }

    #[test]
    fn decodes_alternative_scripts() {
        assert_eq!(decode_ixapipes("folklorearen", "D5rD4eD3aD0n").unwrap(), "folklore");
        assert_eq!(decode_ixapipes("folklorearen", "D4eD3aD2rD0n").unwrap(), "folklore");
        assert_eq!(decode_ixapipes("folklorearen", "D3aD2rD1eD0n").unwrap(), "folklore");
        assert_eq!(decode_ixapipes("birds", "D0s").unwrap(), "bird");
        assert_eq!(decode_ixapipes("did", "R1ioD0d").unwrap(), "do");
        assert_eq!(decode_ixapipes("You", "1").unwrap(), "you");
        assert_eq!(decode_ixapipes("Wolak", "O").unwrap(), "Wolak");
    }

    #[test]
    fn validation_errors() {
        assert_eq!(
            decode_ixapipes("cats", "D0x"),
            Err(DecodeError::CharMismatch {
                index: 0,
                expected: 'x',
                found: 's'
            })
        );
        assert_eq!(
            decode_ixapipes("cat", "D7t"),
            Err(DecodeError::IndexOutOfRange { index: 7, len: 3 })
        );
        assert_eq!(
            decode_ixapipes("cat", "I4x"),
            Err(DecodeError::IndexOutOfRange { index: 4, len: 3 })
        );
    }

    #[test]
    fn insertions_at_one_index() {
        // Prefixing two characters: both inserted at the far end of the
        // reversed form.
        let label = enc("ab", "xyab");
        assert_eq!(label, "I2xI2y");
        assert_eq!(decode_ixapipes("ab", &label).unwrap(), "xyab");

        let label = enc("abc", "abxyz");
        assert_eq!(decode_ixapipes("abc", &label).unwrap(), "abxyz");
        let label = enc("Ab", "aXYb");
        assert_eq!(decode_ixapipes("Ab", &label).unwrap(), "aXYb");
    }

    #[test]
    fn digits_next_to_indices() {
        for (form, lemma) in [
            ("a5", "a"),
            ("1990s", "1990"),
            ("x", "x12345678901"),
            ("ab", "a0b"),
            ("R1", "D0"),
        ] {
            let label = enc(form, lemma);
            assert_eq!(decode_ixapipes(form, &label).unwrap(), lemma, "{label}");
        }
        assert_eq!(enc("a5", "a"), "D05");
    }

    #[test]
    fn lowercase_marker_with_edits() {
        let label = enc("Cats", "cat");
        assert_eq!(label, "1D0s");
        assert_eq!(decode_ixapipes("Cats", &label).unwrap(), "cat");
    }

    #[test]
    fn parse_errors() {
        for bad in ["", "OO", "D0", "X0a", "D", "Dx", "R0a", "1O"] {
            assert!(bad.parse::<IxaLabel>().is_err(), "{bad}");
        }
        assert_eq!(
            "1".parse::<IxaLabel>().unwrap(),
            IxaLabel {
                lower_first: true,
                edits: vec![]
            }
        );
    }
}
