//! Side-by-side comparison of the three schemes on one train/test split.

use serde::Serialize;

use crate::baseline::{train_baseline, BaselineRun};
use crate::error::CompareError;
use crate::labeled::label_corpus;
use crate::metrics::{
    mcnemar, oov_report, paired_outcomes, paired_sentence_outcomes, unique_labels, AlignedLemmas, EvalReport,
    McNemarResult, OovReport,
};
use crate::model::{Corpus, SchemeId};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SchemeReport {
    pub scheme: SchemeId,
    pub train_unique_labels: usize,
    pub train_tokens: usize,
    pub train_encode_failures: usize,
    pub test_encode_failures: usize,
    pub baseline: EvalReport,
    pub baseline_fallbacks: usize,
    pub baseline_decode_failures: usize,
    pub oov: OovReport,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairwiseTest {
    pub a: SchemeId,
    pub b: SchemeId,
    pub word: McNemarResult,
    pub sentence: McNemarResult,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub alpha: f64,
    pub schemes: Vec<SchemeReport>,
    pub mcnemar: Vec<PairwiseTest>,
}

impl ComparisonReport {
    pub fn scheme(&self, scheme: SchemeId) -> Option<&SchemeReport> {
        self.schemes.iter().find(|r| r.scheme == scheme)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Label both corpora under every scheme, train a baseline per scheme on
/// `train`, evaluate it on `test` and test every pair of schemes for a
/// significant difference.
pub fn compare_schemes(train: &Corpus, test: &Corpus, alpha: f64) -> Result<ComparisonReport, CompareError> {
    let mut schemes = Vec::with_capacity(SchemeId::ALL.len());
    let mut outputs: Vec<(SchemeId, AlignedLemmas)> = Vec::new();
    for scheme in SchemeId::ALL {
        let eval = |source| CompareError::Eval { scheme, source };
        let (train_labeled, train_failures) = label_corpus(train, scheme);
        let (test_labeled, test_failures) = label_corpus(test, scheme);
        let model = train_baseline(&train_labeled).map_err(|source| CompareError::Baseline { scheme, source })?;
        let BaselineRun {
            lemmas,
            fallbacks,
            decode_failures,
        } = model.predict_corpus(test);
        let aligned = AlignedLemmas::new(test, &lemmas).map_err(eval)?;
        schemes.push(SchemeReport {
            scheme,
            train_unique_labels: unique_labels(&train_labeled).len(),
            train_tokens: train_labeled.token_count(),
            train_encode_failures: train_failures.len(),
            test_encode_failures: test_failures.len(),
            baseline: aligned.report().map_err(eval)?,
            baseline_fallbacks: fallbacks,
            baseline_decode_failures: decode_failures,
            oov: oov_report(&train_labeled, &test_labeled).map_err(eval)?,
        });
        outputs.push((scheme, aligned));
    }

    let mut tests = Vec::new();
    for (i, (a, out_a)) in outputs.iter().enumerate() {
        for (b, out_b) in &outputs[i + 1..] {
            let eval = |source| CompareError::Eval { scheme: *b, source };
            let (wb, wc) = paired_outcomes(&out_a.flat_gold(), &out_a.flat_pred(), &out_b.flat_pred()).map_err(eval)?;
            let (sb, sc) = paired_sentence_outcomes(&out_a.gold, &out_a.pred, &out_b.pred).map_err(eval)?;
            tests.push(PairwiseTest {
                a: *a,
                b: *b,
                word: mcnemar(wb, wc, alpha),
                sentence: mcnemar(sb, sc, alpha),
            });
        }
    }

    Ok(ComparisonReport {
        alpha,
        schemes,
        mcnemar: tests,
    })
}
