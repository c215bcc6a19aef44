//! UDPipe-style edit scripts.
//!
//! A rule label is a casing script followed by character edits on the
//! prefix and suffix around an unchanged root, e.g. `↓0;d¦--+o` for
//! *did → do*. The root is the longest common substring of the lowercased
//! wordform and lemma. When the two share no character at all the lemma is
//! stored verbatim as an absolute label, `a<lemma>`.

use std::fmt;
use std::str::FromStr;

use crate::alignment::{longest_common_substring, min_script_align, AlignOp, ScriptCosts};
use crate::casing::{case_class, lower_chars, to_lower, to_upper, CaseClass};
use crate::error::{DecodeError, EncodeError, LabelError};
use crate::model::{SchemeId, SesLabel};

const SEP: char = '¦';
const UP: char = '↑';
const DOWN: char = '↓';
const COPY: char = '→';

/// Inserting costs twice as much as copying or deleting because `+c` takes
/// two characters in the serialized script.
pub const SCRIPT_COSTS: ScriptCosts = ScriptCosts {
    insert: 2,
    delete: 1,
    copy: 1,
};

#[derive(Clone, Copy, Debug, Eq, Hash, PartialEq)]
pub enum CaseDirection {
    Up,
    Down,
}

#[derive(Clone, Copy, Debug, Eq, Hash, PartialEq)]
pub struct CasingSegment {
    pub direction: CaseDirection,
    /// First lemma position the segment applies to.
    pub start: usize,
}

/// Casing instructions for a lowercased lemma. Each segment extends to the
/// start of the next one.
#[derive(Clone, Debug, Eq, Hash, PartialEq)]
pub struct CasingScript {
    segments: Vec<CasingSegment>,
}

impl CasingScript {
    /// Derive the casing script describing `lemma`.
    ///
    /// Caseless characters continue the current segment. The first segment
    /// takes the class of the first cased character, or down when there is
    /// none.
    pub fn of_lemma(lemma: &str) -> Self {
        let classes: Vec<CaseClass> = lemma.chars().map(case_class).collect();
        let mut current = match classes.iter().find(|&&c| c != CaseClass::Caseless) {
            Some(CaseClass::Upper) => CaseDirection::Up,
            _ => CaseDirection::Down,
        };
        let mut segments = vec![CasingSegment {
            direction: current,
            start: 0,
        }];
        for (i, class) in classes.into_iter().enumerate() {
            let direction = match class {
                CaseClass::Upper => CaseDirection::Up,
                CaseClass::Lower => CaseDirection::Down,
                CaseClass::Caseless => continue,
            };
            if direction != current {
                segments.push(CasingSegment { direction, start: i });
                current = direction;
            }
        }
        CasingScript { segments }
    }

    pub fn segments(&self) -> &[CasingSegment] {
        &self.segments
    }

    pub fn apply(&self, chars: &mut [char]) {
        for (k, seg) in self.segments.iter().enumerate() {
            let end = self
                .segments
                .get(k + 1)
                .map_or(chars.len(), |next| next.start)
                .min(chars.len());
            let start = seg.start.min(end);
            let recase = match seg.direction {
                CaseDirection::Up => to_upper,
                CaseDirection::Down => to_lower,
            };
            for c in &mut chars[start..end] {
                *c = recase(*c);
            }
        }
    }
}

impl fmt::Display for CasingScript {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        for (k, seg) in self.segments.iter().enumerate() {
            if k > 0 {
                write!(f, "{SEP}")?;
            }
            let arrow = match seg.direction {
                CaseDirection::Up => UP,
                CaseDirection::Down => DOWN,
            };
            write!(f, "{arrow}{}", seg.start)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Eq, Hash, PartialEq)]
pub enum EditOp {
    Copy,
    Delete,
    Insert(char),
}

impl EditOp {
    fn consumes(self) -> bool {
        !matches!(self, EditOp::Insert(_))
    }
}

fn consumed(ops: &[EditOp]) -> usize {
    ops.iter().filter(|op| op.consumes()).count()
}

fn replay(ops: &[EditOp], source: &[char], out: &mut Vec<char>) {
    let mut src = source.iter();
    for op in ops {
        match op {
            EditOp::Copy => out.extend(src.next()),
            EditOp::Delete => {
                src.next();
            }
            EditOp::Insert(c) => out.push(*c),
        }
    }
}

fn write_ops(f: &mut fmt::Formatter, ops: &[EditOp]) -> fmt::Result {
    for op in ops {
        match op {
            EditOp::Copy => write!(f, "{COPY}")?,
            EditOp::Delete => f.write_str("-")?,
            EditOp::Insert(c) => write!(f, "+{c}")?,
        }
    }
    Ok(())
}

/// Prefix and suffix edits around the root.
#[derive(Clone, Debug, Default, Eq, Hash, PartialEq)]
pub struct EditScript {
    pub prefix: Vec<EditOp>,
    pub suffix: Vec<EditOp>,
}

#[derive(Clone, Debug, Eq, Hash, PartialEq)]
pub enum UdpipeLabel {
    Rule { casing: CasingScript, edits: EditScript },
    Absolute(String),
}

fn script_ops(source: &[char], target: &[char]) -> Vec<EditOp> {
    min_script_align(source, target, SCRIPT_COSTS)
        .ops
        .into_iter()
        .map(|op| match op {
            AlignOp::Match(_) => EditOp::Copy,
            AlignOp::Delete(_) => EditOp::Delete,
            AlignOp::Insert(c) => EditOp::Insert(c),
            AlignOp::Replace { .. } => unreachable!("script alignment never replaces"),
        })
        .collect()
}

impl UdpipeLabel {
    pub fn encode(form: &str, lemma: &str) -> Result<Self, EncodeError> {
        if form.is_empty() || lemma.is_empty() {
            return Err(EncodeError::EmptyInput);
        }
        let form_l = lower_chars(form);
        let lemma_l = lower_chars(lemma);
        let root = longest_common_substring(&form_l, &lemma_l);
        if root.length == 0 {
            return Ok(UdpipeLabel::Absolute(lemma.to_owned()));
        }
        let form_end = root.start_in_a + root.length;
        let lemma_end = root.start_in_b + root.length;
        let edits = EditScript {
            prefix: script_ops(&form_l[..root.start_in_a], &lemma_l[..root.start_in_b]),
            suffix: script_ops(&form_l[form_end..], &lemma_l[lemma_end..]),
        };
        Ok(UdpipeLabel::Rule {
            casing: CasingScript::of_lemma(lemma),
            edits,
        })
    }

    pub fn apply(&self, form: &str) -> Result<String, DecodeError> {
        let (casing, edits) = match self {
            UdpipeLabel::Absolute(lemma) => return Ok(lemma.clone()),
            UdpipeLabel::Rule { casing, edits } => (casing, edits),
        };
        let form_l = lower_chars(form);
        let p = consumed(&edits.prefix);
        let s = consumed(&edits.suffix);
        if p + s > form_l.len() {
            return Err(DecodeError::LengthMismatch {
                consumed: p + s,
                len: form_l.len(),
            });
        }
        let suffix_start = form_l.len() - s;
        let mut lemma = Vec::with_capacity(form_l.len() + 4);
        replay(&edits.prefix, &form_l[..p], &mut lemma);
        lemma.extend_from_slice(&form_l[p..suffix_start]);
        replay(&edits.suffix, &form_l[suffix_start..], &mut lemma);
        casing.apply(&mut lemma);
        Ok(lemma.into_iter().collect())
    }
}

impl fmt::Display for UdpipeLabel {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        match self {
            UdpipeLabel::Absolute(lemma) => write!(f, "a{lemma}"),
            UdpipeLabel::Rule { casing, edits } => {
                write!(f, "{casing};d")?;
                write_ops(f, &edits.prefix)?;
                write!(f, "{SEP}")?;
                write_ops(f, &edits.suffix)
            }
        }
    }
}

fn parse_casing(text: &str, label: &str) -> Result<CasingScript, LabelError> {
    let err = |reason| LabelError::malformed(SchemeId::Udpipe, label, reason);
    let mut segments: Vec<CasingSegment> = Vec::new();
    for part in text.split(SEP) {
        let mut chars = part.chars();
        let direction = match chars.next() {
            Some(UP) => CaseDirection::Up,
            Some(DOWN) => CaseDirection::Down,
            _ => return Err(err("casing segment must start with an arrow")),
        };
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err("casing segment needs a decimal position"));
        }
        let start: usize = digits.parse().map_err(|_| err("casing position overflows"))?;
        match segments.last() {
            None if start != 0 => return Err(err("first casing segment must start at 0")),
            Some(prev) if start <= prev.start => return Err(err("casing positions must increase")),
            _ => {}
        }
        segments.push(CasingSegment { direction, start });
    }
    Ok(CasingScript { segments })
}

fn parse_edits(text: &str, label: &str) -> Result<EditScript, LabelError> {
    let err = |reason| LabelError::malformed(SchemeId::Udpipe, label, reason);
    let mut script = EditScript::default();
    let mut in_suffix = false;
    let mut chars = text.chars();
    while let Some(c) = chars.next() {
        let op = match c {
            COPY => EditOp::Copy,
            '-' => EditOp::Delete,
            '+' => EditOp::Insert(chars.next().ok_or_else(|| err("insert without a character"))?),
            SEP if !in_suffix => {
                in_suffix = true;
                continue;
            }
            SEP => return Err(err("more than one prefix/suffix separator")),
            _ => return Err(err("unknown edit operation")),
        };
        if in_suffix {
            script.suffix.push(op);
        } else {
            script.prefix.push(op);
        }
    }
    if !in_suffix {
        return Err(err("missing prefix/suffix separator"));
    }
    Ok(script)
}

impl FromStr for UdpipeLabel {
    type Err = LabelError;

    fn from_str(label: &str) -> Result<Self, Self::Err> {
        if let Some(lemma) = label.strip_prefix('a') {
            if lemma.is_empty() {
                return Err(LabelError::malformed(SchemeId::Udpipe, label, "empty absolute lemma"));
            }
            return Ok(UdpipeLabel::Absolute(lemma.to_owned()));
        }
        let (casing, edits) = label
            .split_once(";d")
            .ok_or_else(|| LabelError::malformed(SchemeId::Udpipe, label, "missing ';d'"))?;
        Ok(UdpipeLabel::Rule {
            casing: parse_casing(casing, label)?,
            edits: parse_edits(edits, label)?,
        })
    }
}

pub fn encode_udpipe(form: &str, lemma: &str) -> Result<SesLabel, EncodeError> {
    let label = UdpipeLabel::encode(form, lemma)?;
    Ok(SesLabel::from_encoder(SchemeId::Udpipe, label.to_string()))
}

pub fn decode_udpipe(form: &str, label: &str) -> Result<String, DecodeError> {
    label.parse::<UdpipeLabel>()?.apply(form)
}
