//! A most-frequent-label lemmatizer.
//!
//! Each lowercased wordform seen in training predicts its most frequent
//! label; unseen forms get the label that is most frequent overall. The
//! label is then decoded against the actual wordform, falling back to the
//! wordform itself when the label does not fit.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::casing::lower_str;
use crate::error::BaselineError;
use crate::labeled::LabeledCorpus;
use crate::model::{Corpus, SchemeId};
use crate::ses;

#[derive(Clone, Debug, Deserialize, Eq, PartialEq, Serialize)]
pub struct BaselineModel {
    pub scheme: SchemeId,
    pub per_form: BTreeMap<String, String>,
    pub fallback: String,
}

#[derive(Clone, Debug, Eq, PartialEq)]
pub struct Prediction {
    pub lemma: String,
    pub used_fallback: bool,
    /// The chosen label did not apply to the wordform, so the wordform was
    /// returned unchanged.
    pub decode_failed: bool,
}

/// Most frequent key, ties going to the smallest key.
fn majority(counts: &BTreeMap<&str, usize>) -> Option<String> {
    // BTreeMap iterates keys in increasing order and max_by_key keeps the
    // last maximum, so iterate in reverse.
    counts
        .iter()
        .rev()
        .max_by_key(|(_, &n)| n)
        .map(|(label, _)| (*label).to_owned())
}

pub fn train_baseline(labeled: &LabeledCorpus) -> Result<BaselineModel, BaselineError> {
    let mut per_form: BTreeMap<String, BTreeMap<&str, usize>> = BTreeMap::new();
    let mut overall: BTreeMap<&str, usize> = BTreeMap::new();
    for token in labeled.tokens() {
        let label = token.label().text();
        *per_form
            .entry(lower_str(token.form()))
            .or_default()
            .entry(label)
            .or_insert(0) += 1;
        *overall.entry(label).or_insert(0) += 1;
    }
    let fallback = majority(&overall).ok_or(BaselineError::EmptyCorpus)?;
    let per_form = per_form
        .into_iter()
        .map(|(form, counts)| (form, majority(&counts).expect("every form has a label")))
        .collect();
    Ok(BaselineModel {
        scheme: labeled.scheme,
        per_form,
        fallback,
    })
}

impl BaselineModel {
    pub fn predict(&self, form: &str) -> Prediction {
        let (label, used_fallback) = match self.per_form.get(&lower_str(form)) {
            Some(label) => (label, false),
            None => (&self.fallback, true),
        };
        match ses::decode_text(self.scheme, form, label) {
            Ok(lemma) => Prediction {
                lemma,
                used_fallback,
                decode_failed: false,
            },
            Err(_) => Prediction {
                lemma: form.to_owned(),
                used_fallback,
                decode_failed: true,
            },
        }
    }

    /// Predict a lemma for every token of `corpus`, lemma-less tokens included.
    pub fn predict_corpus(&self, corpus: &Corpus) -> BaselineRun {
        let lemmas: Vec<Vec<Prediction>> = corpus
            .sentences
            .par_iter()
            .map(|s| s.tokens.iter().map(|t| self.predict(&t.form)).collect())
            .collect();
        let mut run = BaselineRun::default();
        for sentence in lemmas {
            let mut out = Vec::with_capacity(sentence.len());
            for p in sentence {
                run.fallbacks += usize::from(p.used_fallback);
                run.decode_failures += usize::from(p.decode_failed);
                out.push(p.lemma);
            }
            run.lemmas.push(out);
        }
        run
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

pub fn predict_lemma(model: &BaselineModel, form: &str) -> Prediction {
    model.predict(form)
}

/// Lemmas predicted for a corpus, sentence by sentence.
#[derive(Clone, Debug, Default, Eq, PartialEq)]
pub struct BaselineRun {
    pub lemmas: Vec<Vec<String>>,
    pub fallbacks: usize,
    pub decode_failures: usize,
}
