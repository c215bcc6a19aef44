//! Simple one-to-one case mapping over Unicode scalar values.
//!
//! A character is only considered cased when its case conversion maps to a
//! single character and converting back yields the original character. All
//! other characters (`ß`, `İ`, `ǅ`, the Kelvin sign, ...) are caseless, which
//! keeps per-position casing instructions invertible.

/// Case class of a single character.
#[derive(Clone, Copy, Debug, Eq, PartialEq)]
pub enum CaseClass {
    Upper,
    Lower,
    Caseless,
}

fn single<I: Iterator<Item = char>>(mut it: I) -> Option<char> {
    let c = it.next()?;
    if it.next().is_some() {
        None
    } else {
        Some(c)
    }
}

pub fn case_class(c: char) -> CaseClass {
    if let Some(l) = single(c.to_lowercase()) {
        if l != c && single(l.to_uppercase()) == Some(c) {
            return CaseClass::Upper;
        }
    }
    if let Some(u) = single(c.to_uppercase()) {
        if u != c && single(u.to_lowercase()) == Some(c) {
            return CaseClass::Lower;
        }
    }
    CaseClass::Caseless
}

/// Lowercase `c` if it is an uppercase character, otherwise return it as is.
pub fn to_lower(c: char) -> char {
    match case_class(c) {
        CaseClass::Upper => single(c.to_lowercase()).unwrap_or(c),
        _ => c,
    }
}

/// Uppercase `c` if it is a lowercase character, otherwise return it as is.
pub fn to_upper(c: char) -> char {
    match case_class(c) {
        CaseClass::Lower => single(c.to_uppercase()).unwrap_or(c),
        _ => c,
    }
}

pub fn lower_chars(s: &str) -> Vec<char> {
    s.chars().map(to_lower).collect()
}

pub fn lower_str(s: &str) -> String {
    s.chars().map(to_lower).collect()
}
