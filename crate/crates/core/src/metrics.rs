//! Accuracy metrics, McNemar's test, label vocabularies and
//! out-of-vocabulary statistics.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::Serialize;
use statrs::function::erf::erfc;

use crate::error::EvalError;
use crate::labeled::LabeledCorpus;
use crate::model::{Corpus, SchemeId};

fn check_lengths(gold: usize, pred: usize) -> Result<(), EvalError> {
    if gold != pred {
        return Err(EvalError::LengthMismatch { gold, pred });
    }
    Ok(())
}

/// Fraction of exactly (case-sensitively) matching lemmas.
pub fn word_accuracy<G, P>(gold: &[G], pred: &[P]) -> Result<f64, EvalError>
where
    G: AsRef<str>,
    P: AsRef<str>,
{
    check_lengths(gold.len(), pred.len())?;
    if gold.is_empty() {
        return Err(EvalError::EmptyEval);
    }
    let correct = gold.iter().zip(pred).filter(|(g, p)| g.as_ref() == p.as_ref()).count();
    Ok(correct as f64 / gold.len() as f64)
}

fn check_structure<G, P>(gold: &[Vec<G>], pred: &[Vec<P>]) -> Result<(), EvalError> {
    check_lengths(gold.len(), pred.len())?;
    for (sentence, (g, p)) in gold.iter().zip(pred).enumerate() {
        if g.len() != p.len() {
            return Err(EvalError::StructureMismatch {
                sentence,
                gold: g.len(),
                pred: p.len(),
            });
        }
    }
    Ok(())
}

fn sentence_correct<G: AsRef<str>, P: AsRef<str>>(gold: &[G], pred: &[P]) -> bool {
    gold.iter().zip(pred).all(|(g, p)| g.as_ref() == p.as_ref())
}

/// Fraction of sentences in which every lemma is correct.
pub fn sentence_accuracy<G, P>(gold: &[Vec<G>], pred: &[Vec<P>]) -> Result<f64, EvalError>
where
    G: AsRef<str>,
    P: AsRef<str>,
{
    check_structure(gold, pred)?;
    if gold.is_empty() {
        return Err(EvalError::EmptyEval);
    }
    let correct = gold.iter().zip(pred).filter(|(g, p)| sentence_correct(g, p)).count();
    Ok(correct as f64 / gold.len() as f64)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EvalReport {
    pub word_accuracy: f64,
    pub sentence_accuracy: f64,
    pub token_total: usize,
    pub sentence_total: usize,
}

impl fmt::Display for EvalReport {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        writeln!(f, "{:<20}{:>10.4}", "word accuracy", self.word_accuracy)?;
        writeln!(f, "{:<20}{:>10.4}", "sentence accuracy", self.sentence_accuracy)?;
        writeln!(f, "{:<20}{:>10}", "tokens", self.token_total)?;
        write!(f, "{:<20}{:>10}", "sentences", self.sentence_total)
    }
}

/// Gold and predicted lemmas of the gold tokens that carry a lemma,
/// grouped by sentence. Sentences without any such token are dropped.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct AlignedLemmas {
    pub forms: Vec<Vec<String>>,
    pub gold: Vec<Vec<String>>,
    pub pred: Vec<Vec<String>>,
}

impl AlignedLemmas {
    /// Pair `pred` (one lemma per gold token, lemma-less tokens included)
    /// with the gold corpus.
    pub fn new<P: AsRef<str>>(gold: &Corpus, pred: &[Vec<P>]) -> Result<Self, EvalError> {
        check_lengths(gold.sentences.len(), pred.len())?;
        let mut aligned = AlignedLemmas::default();
        for (sentence, (g, p)) in gold.sentences.iter().zip(pred).enumerate() {
            if g.tokens.len() != p.len() {
                return Err(EvalError::StructureMismatch {
                    sentence,
                    gold: g.tokens.len(),
                    pred: p.len(),
                });
            }
            let (mut forms, mut golds, mut preds) = (Vec::new(), Vec::new(), Vec::new());
            for (token, pred) in g.tokens.iter().zip(p) {
                if let Some(lemma) = &token.lemma {
                    forms.push(token.form.clone());
                    golds.push(lemma.clone());
                    preds.push(pred.as_ref().to_owned());
                }
            }
            if !golds.is_empty() {
                aligned.forms.push(forms);
                aligned.gold.push(golds);
                aligned.pred.push(preds);
            }
        }
        Ok(aligned)
    }

    pub fn flat_gold(&self) -> Vec<&str> {
        self.gold.iter().flatten().map(String::as_str).collect()
    }

    pub fn flat_pred(&self) -> Vec<&str> {
        self.pred.iter().flatten().map(String::as_str).collect()
    }

    pub fn flat_forms(&self) -> Vec<&str> {
        self.forms.iter().flatten().map(String::as_str).collect()
    }

    pub fn report(&self) -> Result<EvalReport, EvalError> {
        let gold = self.flat_gold();
        Ok(EvalReport {
            word_accuracy: word_accuracy(&gold, &self.flat_pred())?,
            sentence_accuracy: sentence_accuracy(&self.gold, &self.pred)?,
            token_total: gold.len(),
            sentence_total: self.gold.len(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct McNemarResult {
    /// Items system A got right and system B got wrong.
    pub b: u64,
    /// Items system A got wrong and system B got right.
    pub c: u64,
    pub statistic: f64,
    pub p_value: f64,
    pub alpha: f64,
    pub significant: bool,
}

impl fmt::Display for McNemarResult {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        writeln!(f, "{:<12}{:>12}", "b", self.b)?;
        writeln!(f, "{:<12}{:>12}", "c", self.c)?;
        writeln!(f, "{:<12}{:>12.4}", "statistic", self.statistic)?;
        writeln!(f, "{:<12}{:>12.6}", "p-value", self.p_value)?;
        let verdict = if self.significant {
            "significant"
        } else {
            "not significant"
        };
        write!(f, "{:<12}{:>12} at alpha = {}", "verdict", verdict, self.alpha)
    }
}

/// Upper tail probability of a chi-square variable with one degree of freedom.
pub fn chi_square_1_survival(x: f64) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    erfc((x / 2.0).sqrt()).clamp(0.0, 1.0)
}

/// McNemar's test with continuity correction over the discordant counts.
///
/// The statistic `(|b - c| - 1)² / (b + c)` is referred to a chi-square
/// distribution with one degree of freedom.
pub fn mcnemar(b: u64, c: u64, alpha: f64) -> McNemarResult {
    let (statistic, p_value) = if b + c == 0 {
        (0.0, 1.0)
    } else {
        let diff = (b as f64 - c as f64).abs() - 1.0;
        // |b - c| = 0 gives a negative corrected difference; the square keeps
        // the statistic non-negative either way.
        let statistic = diff * diff / (b + c) as f64;
        (statistic, chi_square_1_survival(statistic))
    };
    McNemarResult {
        b,
        c,
        statistic,
        p_value,
        alpha,
        significant: p_value < alpha,
    }
}

/// Discordant counts of two systems over the same gold lemmas.
pub fn paired_outcomes<G, A, B>(gold: &[G], pred_a: &[A], pred_b: &[B]) -> Result<(u64, u64), EvalError>
where
    G: AsRef<str>,
    A: AsRef<str>,
    B: AsRef<str>,
{
    check_lengths(gold.len(), pred_a.len())?;
    check_lengths(gold.len(), pred_b.len())?;
    let mut counts = (0, 0);
    for ((g, a), b) in gold.iter().zip(pred_a).zip(pred_b) {
        let g = g.as_ref();
        match (a.as_ref() == g, b.as_ref() == g) {
            (true, false) => counts.0 += 1,
            (false, true) => counts.1 += 1,
            _ => {}
        }
    }
    Ok(counts)
}

/// Discordant counts where an item is a whole sentence, correct only when
/// every lemma in it is.
pub fn paired_sentence_outcomes<G, A, B>(
    gold: &[Vec<G>],
    pred_a: &[Vec<A>],
    pred_b: &[Vec<B>],
) -> Result<(u64, u64), EvalError>
where
    G: AsRef<str>,
    A: AsRef<str>,
    B: AsRef<str>,
{
    check_structure(gold, pred_a)?;
    check_structure(gold, pred_b)?;
    let mut counts = (0, 0);
    for ((g, a), b) in gold.iter().zip(pred_a).zip(pred_b) {
        match (sentence_correct(g, a), sentence_correct(g, b)) {
            (true, false) => counts.0 += 1,
            (false, true) => counts.1 += 1,
            _ => {}
        }
    }
    Ok(counts)
}

/// Label frequencies of a labeled corpus.
#[derive(Clone, Debug, Eq, PartialEq, Serialize)]
pub struct LabelVocabulary {
    pub scheme: SchemeId,
    pub counts: BTreeMap<String, usize>,
}

impl LabelVocabulary {
    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn contains(&self, label: &str) -> bool {
        self.counts.contains_key(label)
    }
}

pub fn unique_labels(labeled: &LabeledCorpus) -> LabelVocabulary {
    let mut counts = BTreeMap::new();
    for token in labeled.tokens() {
        *counts.entry(token.label().text().to_owned()).or_insert(0) += 1;
    }
    LabelVocabulary {
        scheme: labeled.scheme,
        counts,
    }
}

/// Proportions of test items never seen in training.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OovReport {
    pub scheme: SchemeId,
    pub test_tokens: usize,
    pub oov_word_rate: f64,
    pub oov_lemma_rate: f64,
    pub oov_ses_rate: f64,
    /// Among tokens with an unseen lemma, the fraction whose label was seen.
    /// 1.0 when there is no such token; see `oov_lemma_set_empty`.
    pub oov_lemma_with_seen_ses_rate: f64,
    pub oov_lemma_set_empty: bool,
}

fn percent(rate: f64) -> String {
    format!("{:.2}%", rate * 100.0)
}

impl fmt::Display for OovReport {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        writeln!(f, "{:<28}{:>10}", "oov words", percent(self.oov_word_rate))?;
        writeln!(f, "{:<28}{:>10}", "oov lemmas", percent(self.oov_lemma_rate))?;
        writeln!(
            f,
            "{:<28}{:>10}",
            format!("oov ses ({})", self.scheme),
            percent(self.oov_ses_rate)
        )?;
        let seen = percent(self.oov_lemma_with_seen_ses_rate);
        let seen = if self.oov_lemma_set_empty {
            format!("{seen} (no oov lemmas)")
        } else {
            seen
        };
        write!(f, "{:<28}{:>10}", "oov lemmas (ses in train)", seen)
    }
}

pub fn oov_report(train: &LabeledCorpus, test: &LabeledCorpus) -> Result<OovReport, EvalError> {
    if train.scheme != test.scheme {
        return Err(EvalError::SchemeMismatch {
            train: train.scheme,
            test: test.scheme,
        });
    }
    let forms: HashSet<&str> = train.tokens().map(|t| t.form()).collect();
    let lemmas: HashSet<&str> = train.tokens().map(|t| t.gold_lemma()).collect();
    let labels: HashSet<&str> = train.tokens().map(|t| t.label().text()).collect();

    let (mut total, mut oov_words, mut oov_lemmas, mut oov_ses, mut oov_lemma_seen_ses) = (0, 0, 0, 0, 0);
    for token in test.tokens() {
        total += 1;
        let seen_label = labels.contains(token.label().text());
        if !forms.contains(token.form()) {
            oov_words += 1;
        }
        if !seen_label {
            oov_ses += 1;
        }
        if !lemmas.contains(token.gold_lemma()) {
            oov_lemmas += 1;
            if seen_label {
                oov_lemma_seen_ses += 1;
            }
        }
    }
    if total == 0 {
        return Err(EvalError::EmptyEval);
    }
    let rate = |n: usize| n as f64 / total as f64;
    Ok(OovReport {
        scheme: test.scheme,
        test_tokens: total,
        oov_word_rate: rate(oov_words),
        oov_lemma_rate: rate(oov_lemmas),
        oov_ses_rate: rate(oov_ses),
        oov_lemma_with_seen_ses_rate: if oov_lemmas == 0 {
            1.0
        } else {
            oov_lemma_seen_ses as f64 / oov_lemmas as f64
        },
        oov_lemma_set_empty: oov_lemmas == 0,
    })
}

/// Word accuracy split by whether the wordform occurred in training.
/// An empty partition has no accuracy.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvOovAccuracy {
    pub inv_accuracy: Option<f64>,
    pub oov_accuracy: Option<f64>,
    pub inv_tokens: usize,
    pub oov_tokens: usize,
}

impl fmt::Display for InvOovAccuracy {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        let show = |acc: Option<f64>| acc.map_or_else(|| "-".to_owned(), |a| format!("{a:.4}"));
        writeln!(
            f,
            "{:<20}{:>10} ({} tokens)",
            "INV accuracy",
            show(self.inv_accuracy),
            self.inv_tokens
        )?;
        write!(
            f,
            "{:<20}{:>10} ({} tokens)",
            "OOV accuracy",
            show(self.oov_accuracy),
            self.oov_tokens
        )
    }
}

pub fn inv_oov_accuracy<F, G, P>(
    train_forms: &HashSet<String>,
    forms: &[F],
    gold: &[G],
    pred: &[P],
) -> Result<InvOovAccuracy, EvalError>
where
    F: AsRef<str>,
    G: AsRef<str>,
    P: AsRef<str>,
{
    check_lengths(gold.len(), forms.len())?;
    check_lengths(gold.len(), pred.len())?;
    let (mut inv, mut inv_correct, mut oov, mut oov_correct) = (0, 0, 0, 0);
    for ((form, g), p) in forms.iter().zip(gold).zip(pred) {
        let correct = usize::from(g.as_ref() == p.as_ref());
        if train_forms.contains(form.as_ref()) {
            inv += 1;
            inv_correct += correct;
        } else {
            oov += 1;
            oov_correct += correct;
        }
    }
    let ratio = |n: usize, d: usize| (d > 0).then(|| n as f64 / d as f64);
    Ok(InvOovAccuracy {
        inv_accuracy: ratio(inv_correct, inv),
        oov_accuracy: ratio(oov_correct, oov),
        inv_tokens: inv,
        oov_tokens: oov,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labeled::label_corpus;
    use crate::model::Sentence;

    fn strings(items: &[&str]) -> Vec<String> {
        items.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn word_accuracy_examples() {
        let gold = ["a", "b", "c", "d"];
        assert_eq!(word_accuracy(&gold, &gold).unwrap(), 1.0);
        assert_eq!(word_accuracy(&gold, &["a", "b", "c", "x"]).unwrap(), 0.75);
        assert_eq!(word_accuracy::<&str, &str>(&[], &[]), Err(EvalError::EmptyEval));
        assert_eq!(
            word_accuracy(&gold, &["a"]),
            Err(EvalError::LengthMismatch { gold: 4, pred: 1 })
        );
        // Case-sensitive comparison.
        assert_eq!(word_accuracy(&["Madrid"], &["madrid"]).unwrap(), 0.0);
    }

    #[test]
    fn sentence_accuracy_examples() {
        let gold = vec![strings(&["a", "b"]), strings(&["c"])];
        assert_eq!(sentence_accuracy(&gold, &gold).unwrap(), 1.0);
        let pred = vec![strings(&["a", "x"]), strings(&["c"])];
        assert_eq!(sentence_accuracy(&gold, &pred).unwrap(), 0.5);
        let bad = vec![strings(&["a"]), strings(&["c"])];
        assert_eq!(
            sentence_accuracy(&gold, &bad),
            Err(EvalError::StructureMismatch {
                sentence: 0,
                gold: 2,
                pred: 1
            })
        );
    }

    #[test]
    fn one_error_per_sentence_zeroes_sentence_accuracy() {
        let gold: Vec<Vec<String>> = (0..10)
            .map(|s| (0..10).map(|t| format!("w{s}_{t}")).collect())
            .collect();
        let mut pred = gold.clone();
        for (s, sentence) in pred.iter_mut().enumerate() {
            sentence[s] = "wrong".into();
        }
        let flat_gold: Vec<_> = gold.iter().flatten().collect::<Vec<_>>();
        let flat_pred: Vec<_> = pred.iter().flatten().collect::<Vec<_>>();
        let flat_gold: Vec<&str> = flat_gold.iter().map(|s| s.as_str()).collect();
        let flat_pred: Vec<&str> = flat_pred.iter().map(|s| s.as_str()).collect();
        assert_eq!(word_accuracy(&flat_gold, &flat_pred).unwrap(), 0.9);
        assert_eq!(sentence_accuracy(&gold, &pred).unwrap(), 0.0);
    }

    #[test]
    fn mcnemar_edge_cases() {
        let r = mcnemar(0, 0, 0.05);
        assert_eq!((r.statistic, r.p_value, r.significant), (0.0, 1.0, false));
        for k in 1..50 {
            let r = mcnemar(k, k, 0.05);
            assert!((r.statistic - 1.0 / (2.0 * k as f64)).abs() < 1e-12);
            assert!(r.p_value > 0.45 && !r.significant);
        }
        let r = mcnemar(10, 25, 0.05);
        assert!((r.statistic - 5.6).abs() < 1e-12);
        assert!(r.significant);
    }

    #[test]
    fn paired_outcome_examples() {
        let gold = ["a", "b", "c", "d", "e", "f"];
        assert_eq!(paired_outcomes(&gold, &gold, &gold).unwrap(), (0, 0));
        let wrong = ["x"; 5];
        assert_eq!(paired_outcomes(&gold[..5], &gold[..5], &wrong).unwrap(), (5, 0));
        // Positions 0 and 1: A only; position 2: B only; 3: both; 4, 5: neither.
        let a = ["a", "b", "x", "d", "x", "x"];
        let b = ["x", "x", "c", "d", "x", "x"];
        assert_eq!(paired_outcomes(&gold, &a, &b).unwrap(), (2, 1));
        assert!(paired_outcomes(&gold, &a, &b[..3]).is_err());
    }

    #[test]
    fn paired_sentences() {
        let gold = vec![strings(&["a", "b"]), strings(&["c"]), strings(&["d"])];
        let a = vec![strings(&["a", "b"]), strings(&["x"]), strings(&["d"])];
        let b = vec![strings(&["a", "x"]), strings(&["x"]), strings(&["d"])];
        assert_eq!(paired_sentence_outcomes(&gold, &a, &b).unwrap(), (1, 0));
    }

    fn corpus(pairs: &[(&str, &str)]) -> Corpus {
        Corpus::new(
            "t",
            vec![Sentence::from_triples(pairs.iter().map(|&(f, l)| (f, l, "NOUN")))],
        )
    }

    fn reference() -> Corpus {
        corpus(&[
            ("cats", "cat"),
            ("birds", "bird"),
            ("did", "do"),
            ("Wolak", "Wolak"),
            ("You", "you"),
        ])
    }

    #[test]
    fn vocabulary_sizes() {
        let (udpipe, _) = label_corpus(&reference(), SchemeId::Udpipe);
        let vocab = unique_labels(&udpipe);
        assert_eq!(vocab.len(), 4);
        assert_eq!(vocab.counts["↓0;d¦-"], 2);
        let (morpheus, _) = label_corpus(&reference(), SchemeId::Morpheus);
        assert_eq!(unique_labels(&morpheus).len(), 5);
        let (empty, _) = label_corpus(&Corpus::default(), SchemeId::Udpipe);
        assert!(unique_labels(&empty).is_empty());
    }

    #[test]
    fn oov_examples() {
        let train = corpus(&[("cats", "cat"), ("birds", "bird")]);
        let test = corpus(&[("dogs", "dog")]);
        for scheme in [SchemeId::Udpipe, SchemeId::Morpheus] {
            let (tr, _) = label_corpus(&train, scheme);
            let (te, _) = label_corpus(&test, scheme);
            let r = oov_report(&tr, &te).unwrap();
            assert_eq!(
                (
                    r.oov_word_rate,
                    r.oov_lemma_rate,
                    r.oov_ses_rate,
                    r.oov_lemma_with_seen_ses_rate
                ),
                (1.0, 1.0, 0.0, 1.0),
                "{scheme}"
            );
            assert!(!r.oov_lemma_set_empty);

            let same = oov_report(&tr, &tr).unwrap();
            assert_eq!(
                (same.oov_word_rate, same.oov_lemma_rate, same.oov_ses_rate),
                (0.0, 0.0, 0.0)
            );
            assert_eq!(same.oov_lemma_with_seen_ses_rate, 1.0);
            assert!(same.oov_lemma_set_empty);
        }
        let (a, _) = label_corpus(&train, SchemeId::Udpipe);
        let (b, _) = label_corpus(&test, SchemeId::Ixapipes);
        assert!(matches!(oov_report(&a, &b), Err(EvalError::SchemeMismatch { .. })));
    }

    #[test]
    fn oov_report_formats_percentages() {
        let (tr, _) = label_corpus(&corpus(&[("cats", "cat")]), SchemeId::Udpipe);
        let (te, _) = label_corpus(
            &corpus(&[("cats", "cat"), ("dogs", "dog"), ("went", "go")]),
            SchemeId::Udpipe,
        );
        let text = oov_report(&tr, &te).unwrap().to_string();
        assert!(text.contains("66.67%"), "{text}");
    }

    #[test]
    fn inv_oov_examples() {
        let train: HashSet<String> = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
        let r = inv_oov_accuracy(&train, &["a", "b"], &["x", "y"], &["x", "y"]).unwrap();
        assert_eq!((r.inv_accuracy, r.oov_accuracy), (Some(1.0), None));

        let r = inv_oov_accuracy(
            &train,
            &["a", "b", "q", "r"],
            &["x", "y", "z", "w"],
            &["x", "y", "-", "-"],
        )
        .unwrap();
        assert_eq!((r.inv_accuracy, r.oov_accuracy), (Some(1.0), Some(0.0)));

        // 5 in-vocabulary tokens (4 correct) and 3 unseen (1 correct).
        let forms = ["a", "b", "c", "d", "a", "p", "q", "r"];
        let gold = ["1", "2", "3", "4", "5", "6", "7", "8"];
        let pred = ["1", "2", "3", "4", "x", "6", "x", "x"];
        let r = inv_oov_accuracy(&train, &forms, &gold, &pred).unwrap();
        assert_eq!((r.inv_tokens, r.oov_tokens), (5, 3));
        assert_eq!(r.inv_accuracy, Some(0.8));
        assert_eq!(r.oov_accuracy, Some(1.0 / 3.0));
        let overall = word_accuracy(&gold, &pred).unwrap();
        let weighted = (0.8 * 5.0 + 1.0 / 3.0 * 3.0) / 8.0;
        assert!((overall - weighted).abs() < 1e-12);
    }

    #[test]
    fn aligned_lemmas_skip_unlemmatized_gold() {
        let mut gold = corpus(&[("cats", "cat"), ("x", "x")]);
        gold.sentences[0].tokens[1].lemma = None;
        let pred = vec![strings(&["cat", "whatever"])];
        let aligned = AlignedLemmas::new(&gold, &pred).unwrap();
        assert_eq!(aligned.gold, vec![strings(&["cat"])]);
        let report = aligned.report().unwrap();
        assert_eq!((report.word_accuracy, report.token_total), (1.0, 1));
    }
}
