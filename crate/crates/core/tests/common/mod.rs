//! Reference implementations and data generators shared by the integration
//! tests. Nothing here calls into the library's alignment code.

#![allow(dead_code)]

use std::collections::HashMap;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use ses_core::{Corpus, Sentence, Token};

/// Edit distance by exhaustive recursion over the last column. Exponential;
/// only for very short strings.
pub fn naive_distance(a: &[char], b: &[char]) -> usize {
    match (a.split_last(), b.split_last()) {
        (None, _) => b.len(),
        (_, None) => a.len(),
        (Some((x, ra)), Some((y, rb))) => {
            let diag = naive_distance(ra, rb) + usize::from(x != y);
            let del = naive_distance(ra, b) + 1;
            let ins = naive_distance(a, rb) + 1;
            diag.min(del).min(ins)
        }
    }
}

/// Wagner-Fischer edit distance.
pub fn wagner_fischer(a: &[char], b: &[char]) -> usize {
    let mut row: Vec<usize> = (0..=b.len()).collect();
    for (i, x) in a.iter().enumerate() {
        let mut next = vec![i + 1; b.len() + 1];
        for (j, y) in b.iter().enumerate() {
            next[j + 1] = (row[j] + usize::from(x != y)).min(row[j + 1] + 1).min(next[j] + 1);
        }
        row = next;
    }
    row[b.len()]
}

/// One Wagner-Fischer row: distances from every prefix of `a` to `prefix + c`,
/// given the row for `prefix`.
pub fn extend_row(a: &[char], row: &[usize], c: char) -> Vec<usize> {
    let mut next = vec![row[0] + 1; a.len() + 1];
    for (i, &x) in a.iter().enumerate() {
        next[i + 1] = (row[i] + usize::from(x != c)).min(row[i + 1] + 1).min(next[i] + 1);
    }
    next
}

/// All strings over `alphabet` of length at most `max_len`, in depth-first
/// order (every string directly follows its parent prefix's subtree start).
pub fn universe(alphabet: &[char], max_len: usize) -> Vec<Vec<char>> {
    fn walk(alphabet: &[char], max_len: usize, cur: &mut Vec<char>, out: &mut Vec<Vec<char>>) {
        out.push(cur.clone());
        if cur.len() == max_len {
            return;
        }
        for &c in alphabet {
            cur.push(c);
            walk(alphabet, max_len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    walk(alphabet, max_len, &mut Vec::new(), &mut out);
    out
}

/// Every non-empty substring of every string in a universe, as ids, for
/// longest-common-substring lookups by set intersection.
pub struct SubstringIndex {
    /// Per string: (substring id, first start, length), sorted by id.
    pub sets: Vec<Vec<(u32, u8, u8)>>,
    /// Per string: `ids[start][len - 1]`.
    pub ids: Vec<Vec<Vec<u32>>>,
}

impl SubstringIndex {
    pub fn new(strings: &[Vec<char>]) -> Self {
        let id_of: HashMap<&[char], u32> = strings
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_slice(), i as u32))
            .collect();
        let mut sets = Vec::with_capacity(strings.len());
        let mut ids = Vec::with_capacity(strings.len());
        for s in strings {
            let mut set: Vec<(u32, u8, u8)> = Vec::new();
            let mut table = vec![Vec::new(); s.len()];
            for start in 0..s.len() {
                for end in start + 1..=s.len() {
                    let id = id_of[&s[start..end]];
                    table[start].push(id);
                    set.push((id, start as u8, (end - start) as u8));
                }
            }
            set.sort();
            set.dedup_by_key(|e| e.0);
            sets.push(set);
            ids.push(table);
        }
        SubstringIndex { sets, ids }
    }

    /// (start in a, start in b, length) of the longest common substring,
    /// leftmost in `a`, then leftmost in `b`.
    pub fn lcs(&self, a: usize, b: usize) -> (usize, usize, usize) {
        let (sa, sb) = (&self.sets[a], &self.sets[b]);
        let (mut i, mut j, mut best) = (0, 0, 0);
        while i < sa.len() && j < sb.len() {
            match sa[i].0.cmp(&sb[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    best = best.max(sa[i].2 as usize);
                    i += 1;
                    j += 1;
                }
            }
        }
        if best == 0 {
            return (0, 0, 0);
        }
        for (start, by_len) in self.ids[a].iter().enumerate() {
            if let Some(&id) = by_len.get(best - 1) {
                if let Ok(k) = sb.binary_search_by_key(&id, |e| e.0) {
                    return (start, sb[k].1 as usize, best);
                }
            }
        }
        unreachable!("a common substring of length {best} exists")
    }
}

/// Upper tail of chi-square(1) by Simpson quadrature of the standard normal
/// density: P(X > x) = 1 - 2 * integral of phi over [0, sqrt(x)].
pub fn chi_square_1_tail_simpson(x: f64) -> f64 {
    let upper = x.sqrt();
    let n = 20_000;
    let h = upper / n as f64;
    let phi = |t: f64| (-t * t / 2.0).exp() / (2.0 * std::f64::consts::PI).sqrt();
    let mut sum = phi(0.0) + phi(upper);
    for k in 1..n {
        sum += phi(k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 };
    }
    1.0 - 2.0 * sum * h / 3.0
}

const LATIN: &str = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";
const CYRILLIC: &str = "абвгдеёжзийклмнопрстуфхцчшщъыьэюяАБВГДЕЁЖЗИЙКЛМНОПРСТУФХЦЧШЩЪЫЬЭЮЯ";
const TURKISH: &str = "çğıİöşüÇĞÖŞÜiI";
const OTHER: &str = "0123456789-'.";

pub fn fuzz_alphabet() -> Vec<char> {
    [LATIN, CYRILLIC, TURKISH, OTHER].concat().chars().collect()
}

fn random_word(rng: &mut ChaCha8Rng, alphabet: &[char], len: usize) -> String {
    (0..len).map(|_| *alphabet.choose(rng).unwrap()).collect()
}

fn flip_case(c: char) -> char {
    if c.is_uppercase() {
        c.to_lowercase().next().unwrap()
    } else {
        c.to_uppercase().next().unwrap()
    }
}

/// A lemma derived from `form` by a few random edits, clipped to 1..=12 chars.
fn mutate(rng: &mut ChaCha8Rng, alphabet: &[char], form: &str) -> String {
    let mut chars: Vec<char> = form.chars().collect();
    for _ in 0..rng.random_range(1..=3) {
        match rng.random_range(0..6) {
            0 if chars.len() > 1 => {
                let cut = rng.random_range(1..chars.len());
                chars.truncate(cut);
            }
            1 => {
                let extra = rng.random_range(1..=3);
                chars.extend((0..extra).map(|_| *alphabet.choose(rng).unwrap()));
            }
            2 => {
                let i = rng.random_range(0..chars.len());
                chars[i] = *alphabet.choose(rng).unwrap();
            }
            3 => {
                let i = rng.random_range(0..chars.len());
                chars[i] = flip_case(chars[i]);
            }
            4 => chars = chars.iter().map(|&c| flip_case(c)).collect(),
            _ => {
                let i = rng.random_range(0..=chars.len());
                chars.insert(i, *alphabet.choose(rng).unwrap());
            }
        }
        if chars.is_empty() {
            chars.push(*alphabet.choose(rng).unwrap());
        }
    }
    chars.truncate(12);
    chars.into_iter().collect()
}

/// Random (form, lemma) pairs of 1 to 12 characters, half of them related
/// by small edits.
pub fn fuzz_pairs(seed: u64, count: usize) -> Vec<(String, String)> {
    let alphabet = fuzz_alphabet();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let len = rng.random_range(1..=12);
            let form = random_word(&mut rng, &alphabet, len);
            let lemma = if rng.random_bool(0.5) {
                mutate(&mut rng, &alphabet, &form)
            } else {
                let len = rng.random_range(1..=12);
                random_word(&mut rng, &alphabet, len)
            };
            (form, lemma)
        })
        .collect()
}

fn syllable_stem(rng: &mut ChaCha8Rng) -> String {
    const CONS: &[&str] = &[
        "b", "c", "d", "f", "g", "l", "m", "n", "p", "r", "s", "t", "v", "ch", "ll",
    ];
    const VOWELS: &[&str] = &["a", "e", "i", "o", "u"];
    let syllables = rng.random_range(1..=3);
    let mut stem = String::new();
    for _ in 0..syllables {
        stem.push_str(CONS.choose(rng).unwrap());
        stem.push_str(VOWELS.choose(rng).unwrap());
    }
    stem.push_str(CONS.choose(rng).unwrap());
    stem
}

fn capitalize(s: &str) -> String {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) => c.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}

/// Skewed index into a list of `n` items: low indices are much more likely.
fn skewed(rng: &mut ChaCha8Rng, n: usize) -> usize {
    ((rng.random::<f64>().powi(3)) * n as f64) as usize
}

/// A synthetic treebank with Spanish-like suffixal inflection, sentence-
/// initial capitals, proper nouns, irregular verbs and punctuation.
pub fn synthetic_corpus(seed: u64, sentences: usize) -> Corpus {
    const VERB_ENDINGS: &[&str] = &[
        "o", "as", "a", "amos", "áis", "an", "é", "aste", "ó", "ado", "ando", "aba", "aron",
    ];
    const IRREGULAR: &[(&str, &str)] = &[
        ("es", "ser"),
        ("fue", "ser"),
        ("son", "ser"),
        ("va", "ir"),
        ("fui", "ir"),
        ("tengo", "tener"),
        ("tiene", "tener"),
        ("hizo", "hacer"),
    ];
    const FUNCTION: &[(&str, &str, &str)] = &[
        ("el", "el", "DET"),
        ("la", "el", "DET"),
        ("los", "el", "DET"),
        ("las", "el", "DET"),
        ("de", "de", "ADP"),
        ("en", "en", "ADP"),
        ("y", "y", "CCONJ"),
        ("que", "que", "SCONJ"),
    ];

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nouns: Vec<(String, &str)> = (0..400)
        .map(|_| (syllable_stem(&mut rng), if rng.random_bool(0.5) { "o" } else { "a" }))
        .collect();
    let verbs: Vec<String> = (0..250).map(|_| syllable_stem(&mut rng)).collect();
    let names: Vec<String> = (0..60).map(|_| capitalize(&syllable_stem(&mut rng))).collect();

    let mut out = Vec::with_capacity(sentences);
    for s in 0..sentences {
        let len = rng.random_range(4..=14);
        let mut tokens = Vec::with_capacity(len + 1);
        for i in 0..len {
            let (mut form, mut lemma, upos) = match rng.random_range(0..10) {
                0..=2 => {
                    let (stem, gender) = &nouns[skewed(&mut rng, nouns.len())];
                    let lemma = format!("{stem}{gender}");
                    let form = if rng.random_bool(0.4) {
                        format!("{lemma}s")
                    } else {
                        lemma.clone()
                    };
                    (form, lemma, "NOUN")
                }
                3..=4 => {
                    let stem = &verbs[skewed(&mut rng, verbs.len())];
                    let ending = VERB_ENDINGS.choose(&mut rng).unwrap();
                    (format!("{stem}{ending}"), format!("{stem}ar"), "VERB")
                }
                5 => {
                    let (f, l) = IRREGULAR.choose(&mut rng).unwrap();
                    (f.to_string(), l.to_string(), "VERB")
                }
                6 => {
                    let name = &names[skewed(&mut rng, names.len())];
                    (name.clone(), name.clone(), "PROPN")
                }
                _ => {
                    let (f, l, p) = FUNCTION.choose(&mut rng).unwrap();
                    (f.to_string(), l.to_string(), *p)
                }
            };
            if i == 0 && upos != "PROPN" {
                form = capitalize(&form);
            } else if upos != "PROPN" && rng.random_bool(0.01) {
                form = form.to_uppercase();
            }
            if upos == "PROPN" && rng.random_bool(0.1) {
                lemma = lemma.to_lowercase();
            }
            tokens.push(Token::new(i + 1, form, Some(lemma), upos));
        }
        tokens.push(Token::new(len + 1, ".", Some(".".to_owned()), "PUNCT"));
        out.push(Sentence {
            comments: vec![format!("# sent_id = {s}")],
            tokens,
        });
    }
    Corpus::new(format!("synthetic-{seed}"), out)
}

pub fn data_path(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}
