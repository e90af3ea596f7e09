//! Evaluation: precision/recall/F1 for the metaphor class, per-genre
//! breakdowns, and the mid-p variant of McNemar's test for paired
//! binary predictions.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::Genre;

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("length mismatch: {left} predictions vs {right} references")]
    LengthMismatch { left: usize, right: usize },
    #[error("no examples to evaluate")]
    Empty,
    #[error("value {value} at index {index} is not binary")]
    NonBinary { index: usize, value: u8 },
}

/// Confusion counts with metaphor (1) as the positive class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Confusion {
    #[serde(rename = "tp")]
    pub true_pos: usize,
    #[serde(rename = "fp")]
    pub false_pos: usize,
    #[serde(rename = "fn")]
    pub false_neg: usize,
    #[serde(rename = "tn")]
    pub true_neg: usize,
}

impl Confusion {
    pub fn total(&self) -> usize {
        self.true_pos + self.false_pos + self.false_neg + self.true_neg
    }
}

/// Precision, recall, and F1 as fractions in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

/// Discordant counts and mid-p value of a paired comparison.
///
/// `b` counts examples where model A is wrong and model B right, `c`
/// the reverse.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McNemarResult {
    pub b: usize,
    pub c: usize,
    pub mid_p: f64,
}

/// Significance stars for a mid-p value, at the conventional 0.05 /
/// 0.01 / 0.001 thresholds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Stars {
    None,
    One,
    Two,
    Three,
}

impl Stars {
    pub fn as_str(self) -> &'static str {
        match self {
            Stars::None => "",
            Stars::One => "*",
            Stars::Two => "**",
            Stars::Three => "***",
        }
    }
}

impl fmt::Display for Stars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

fn check_binary(values: &[u8]) -> Result<(), EvalError> {
    for (index, &value) in values.iter().enumerate() {
        if value > 1 {
            return Err(EvalError::NonBinary { index, value });
        }
    }
    Ok(())
}

fn check_lengths(left: usize, right: usize) -> Result<(), EvalError> {
    if left != right {
        return Err(EvalError::LengthMismatch { left, right });
    }
    Ok(())
}

/// Tallies a confusion matrix over paired predictions and gold labels.
pub fn confusion(predictions: &[u8], labels: &[u8]) -> Result<Confusion, EvalError> {
    check_lengths(predictions.len(), labels.len())?;
    if predictions.is_empty() {
        return Err(EvalError::Empty);
    }
    check_binary(predictions)?;
    check_binary(labels)?;
    let mut c = Confusion {
        true_pos: 0,
        false_pos: 0,
        false_neg: 0,
        true_neg: 0,
    };
    for (&p, &y) in predictions.iter().zip(labels) {
        match (p, y) {
            (1, 1) => c.true_pos += 1,
            (1, 0) => c.false_pos += 1,
            (0, 1) => c.false_neg += 1,
            _ => c.true_neg += 1,
        }
    }
    Ok(c)
}

/// Precision, recall, and F1 from confusion counts, with the usual
/// zero-denominator conventions (all-zero metrics).
pub fn prf1(c: &Confusion) -> Metrics {
    let precision = if c.true_pos + c.false_pos == 0 {
        0.0
    } else {
        c.true_pos as f64 / (c.true_pos + c.false_pos) as f64
    };
    let recall = if c.true_pos + c.false_neg == 0 {
        0.0
    } else {
        c.true_pos as f64 / (c.true_pos + c.false_neg) as f64
    };
    let f1 = if precision + recall == 0.0 {
        0.0
    } else {
        2.0 * precision * recall / (precision + recall)
    };
    Metrics {
        precision,
        recall,
        f1,
    }
}

/// Per-genre metrics, computed on each genre's subset of the rows.
pub fn metrics_by_genre(
    predictions: &[u8],
    labels: &[u8],
    genres: &[Genre],
) -> Result<BTreeMap<Genre, Metrics>, EvalError> {
    check_lengths(predictions.len(), labels.len())?;
    check_lengths(predictions.len(), genres.len())?;
    let mut by_genre: BTreeMap<Genre, (Vec<u8>, Vec<u8>)> = BTreeMap::new();
    for ((&p, &y), &genre) in predictions.iter().zip(labels).zip(genres) {
        let entry = by_genre.entry(genre).or_default();
        entry.0.push(p);
        entry.1.push(y);
    }
    let mut out = BTreeMap::new();
    for (genre, (preds, golds)) in by_genre {
        out.insert(genre, prf1(&confusion(&preds, &golds)?));
    }
    Ok(out)
}

/// Mid-p McNemar test on the discordant pairs of two prediction lists.
///
/// With `n = b + c`, `k = min(b, c)`, and `X ~ Binomial(n, 1/2)`, the
/// mid-p value is `2 P(X <= k) - P(X = k)`, clamped to [0, 1]; no
/// discordant pairs yield 1.0. The binomial tail is computed exactly in
/// log space with compensated summation, never a normal approximation.
pub fn mcnemar_midp(
    preds_a: &[u8],
    preds_b: &[u8],
    labels: &[u8],
) -> Result<McNemarResult, EvalError> {
    check_lengths(preds_a.len(), labels.len())?;
    check_lengths(preds_b.len(), labels.len())?;
    check_binary(preds_a)?;
    check_binary(preds_b)?;
    check_binary(labels)?;
    let mut b = 0usize;
    let mut c = 0usize;
    for ((&pa, &pb), &y) in preds_a.iter().zip(preds_b).zip(labels) {
        let a_right = pa == y;
        let b_right = pb == y;
        match (a_right, b_right) {
            (false, true) => b += 1,
            (true, false) => c += 1,
            _ => {}
        }
    }
    Ok(McNemarResult {
        b,
        c,
        mid_p: midp_from_counts(b, c),
    })
}

/// Mid-p value for given discordant counts.
pub fn midp_from_counts(b: usize, c: usize) -> f64 {
    let n = b + c;
    if n == 0 {
        return 1.0;
    }
    let k = b.min(c);
    let cdf = binomial_half_cdf(n, k);
    let pmf = binomial_half_pmf(n, k);
    (2.0 * cdf - pmf).clamp(0.0, 1.0)
}

/// P(X <= k) for X ~ Binomial(n, 1/2), summed term by term in log
/// space with Kahan compensation.
fn binomial_half_cdf(n: usize, k: usize) -> f64 {
    let mut sum = 0.0;
    let mut compensation = 0.0;
    // ln P(X = 0) = -n ln 2
    let mut log_term = -(n as f64) * std::f64::consts::LN_2;
    for i in 0..=k {
        if i > 0 {
            // P(X=i) / P(X=i-1) = (n - i + 1) / i
            log_term += ((n - i + 1) as f64).ln() - (i as f64).ln();
        }
        let term = log_term.exp();
        let y = term - compensation;
        let t = sum + y;
        compensation = (t - sum) - y;
        sum = t;
    }
    sum.min(1.0)
}

fn binomial_half_pmf(n: usize, k: usize) -> f64 {
    let mut log_term = -(n as f64) * std::f64::consts::LN_2;
    for i in 1..=k {
        log_term += ((n - i + 1) as f64).ln() - (i as f64).ln();
    }
    log_term.exp()
}

/// Star bracket for a mid-p value: `***` below 0.001, `**` below 0.01,
/// `*` below 0.05.
pub fn significance_stars(mid_p: f64) -> Stars {
    if mid_p < 0.001 {
        Stars::Three
    } else if mid_p < 0.01 {
        Stars::Two
    } else if mid_p < 0.05 {
        Stars::One
    } else {
        Stars::None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn perfect_predictions_land_on_the_diagonal() {
        let c = confusion(&[1, 0, 1], &[1, 0, 1]).unwrap();
        assert_eq!(
            c,
            Confusion {
                true_pos: 2,
                false_pos: 0,
                false_neg: 0,
                true_neg: 1
            }
        );
        assert_eq!(c.total(), 3);
    }

    #[test]
    fn all_positive_predictions_on_negative_gold() {
        let c = confusion(&[1; 5], &[0; 5]).unwrap();
        assert_eq!(c.false_pos, 5);
        assert_eq!(c.true_pos + c.false_neg + c.true_neg, 0);
    }

    #[test]
    fn mixed_fixture_matches_hand_tally() {
        let preds = [1, 1, 0, 0, 1, 0, 1, 0];
        let labels = [1, 0, 1, 0, 1, 1, 0, 0];
        let c = confusion(&preds, &labels).unwrap();
        assert_eq!(
            c,
            Confusion {
                true_pos: 2,
                false_pos: 2,
                false_neg: 2,
                true_neg: 2
            }
        );
    }

    #[test]
    fn length_mismatch_and_empty_are_errors() {
        assert!(matches!(
            confusion(&[1], &[1, 0]),
            Err(EvalError::LengthMismatch { left: 1, right: 2 })
        ));
        assert!(matches!(confusion(&[], &[]), Err(EvalError::Empty)));
    }

    #[test]
    fn prf1_simple_and_degenerate() {
        let m = prf1(&Confusion {
            true_pos: 10,
            false_pos: 10,
            false_neg: 0,
            true_neg: 0,
        });
        assert_eq!(m.precision, 0.5);
        assert_eq!(m.recall, 1.0);
        assert_abs_diff_eq!(m.f1, 2.0 / 3.0, epsilon = 1e-15);

        let zero = prf1(&Confusion {
            true_pos: 0,
            false_pos: 3,
            false_neg: 2,
            true_neg: 5,
        });
        assert_eq!((zero.precision, zero.recall, zero.f1), (0.0, 0.0, 0.0));
    }

    #[test]
    fn prf1_reproduces_reference_row() {
        // 56.7 precision and 76.8 recall give 65.2 F1 (one decimal)
        let m = Metrics {
            precision: 0.567,
            recall: 0.768,
            f1: 2.0 * 0.567 * 0.768 / (0.567 + 0.768),
        };
        assert_abs_diff_eq!(m.f1 * 100.0, 65.2, epsilon = 0.05);
    }

    #[test]
    fn single_genre_matches_overall() {
        let preds = [1, 0, 1, 1];
        let labels = [1, 1, 0, 1];
        let genres = [Genre::Fiction; 4];
        let by = metrics_by_genre(&preds, &labels, &genres).unwrap();
        assert_eq!(by.len(), 1);
        assert_eq!(by[&Genre::Fiction], prf1(&confusion(&preds, &labels).unwrap()));
    }

    #[test]
    fn two_genres_are_scored_separately() {
        // Academic rows perfect, News rows all wrong
        let preds = [1, 0, 1, 0];
        let labels = [1, 0, 0, 1];
        let genres = [Genre::Academic, Genre::Academic, Genre::News, Genre::News];
        let by = metrics_by_genre(&preds, &labels, &genres).unwrap();
        assert_eq!(by[&Genre::Academic].f1, 1.0);
        assert_eq!(by[&Genre::News].f1, 0.0);
        // fixed genre ordering
        let keys: Vec<Genre> = by.keys().copied().collect();
        assert_eq!(keys, vec![Genre::Academic, Genre::News]);
    }

    #[test]
    fn no_discordant_pairs_gives_p_one() {
        let r = mcnemar_midp(&[1, 0, 1], &[1, 0, 1], &[1, 1, 0]).unwrap();
        assert_eq!((r.b, r.c), (0, 0));
        assert_eq!(r.mid_p, 1.0);
    }

    #[test]
    fn balanced_single_discordants_give_p_one() {
        // b = 1 (a wrong, b right), c = 1 (a right, b wrong)
        let preds_a = [0, 1, 1];
        let preds_b = [1, 0, 1];
        let labels = [1, 1, 1];
        let r = mcnemar_midp(&preds_a, &preds_b, &labels).unwrap();
        assert_eq!((r.b, r.c), (1, 1));
        // 2 * (3/4) - 1/2 = 1.0 exactly
        assert_abs_diff_eq!(r.mid_p, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn two_vs_eight_matches_exact_binomial() {
        assert_abs_diff_eq!(midp_from_counts(2, 8), 67.0 / 1024.0, epsilon = 1e-14);
        let mut preds_a = Vec::new();
        let mut preds_b = Vec::new();
        let mut labels = Vec::new();
        for _ in 0..2 {
            // a wrong, b right
            preds_a.push(0);
            preds_b.push(1);
            labels.push(1);
        }
        for _ in 0..8 {
            // a right, b wrong
            preds_a.push(1);
            preds_b.push(0);
            labels.push(1);
        }
        for _ in 0..30 {
            // concordant filler
            preds_a.push(0);
            preds_b.push(0);
            labels.push(0);
        }
        let r = mcnemar_midp(&preds_a, &preds_b, &labels).unwrap();
        assert_eq!((r.b, r.c), (2, 8));
        assert_abs_diff_eq!(r.mid_p, 0.0654296875, epsilon = 1e-12);
    }

    #[test]
    fn stars_brackets() {
        assert_eq!(significance_stars(0.0005), Stars::Three);
        assert_eq!(significance_stars(0.005), Stars::Two);
        assert_eq!(significance_stars(0.02), Stars::One);
        assert_eq!(significance_stars(1.0), Stars::None);
        // strict inequalities at the boundaries
        assert_eq!(significance_stars(0.001), Stars::Two);
        assert_eq!(significance_stars(0.01), Stars::One);
        assert_eq!(significance_stars(0.05), Stars::None);
        assert_eq!(significance_stars(0.0), Stars::Three);
    }

    #[test]
    fn large_n_stays_in_unit_interval() {
        let p = midp_from_counts(2400, 2600);
        assert!(p > 0.0 && p < 1.0, "p = {p}");
        // heavily skewed counts are decisively significant
        assert!(midp_from_counts(100, 300) < 1e-20);
    }

    proptest! {
        #[test]
        fn midp_is_symmetric(b in 0usize..200, c in 0usize..200) {
            prop_assert_eq!(
                midp_from_counts(b, c).to_bits(),
                midp_from_counts(c, b).to_bits()
            );
        }

        #[test]
        fn concordant_pairs_are_irrelevant(
            b in 0usize..20,
            c in 0usize..20,
            filler in 0usize..50,
        ) {
            let build = |extra: usize| {
                let mut pa = Vec::new();
                let mut pb = Vec::new();
                let mut y = Vec::new();
                for _ in 0..b {
                    pa.push(0); pb.push(1); y.push(1);
                }
                for _ in 0..c {
                    pa.push(1); pb.push(0); y.push(1);
                }
                for i in 0..extra {
                    let both = (i % 2) as u8;
                    pa.push(both); pb.push(both); y.push((i % 3 == 0) as u8);
                }
                if pa.is_empty() {
                    pa.push(1); pb.push(1); y.push(1);
                }
                mcnemar_midp(&pa, &pb, &y).unwrap()
            };
            let bare = build(0);
            let padded = build(filler);
            prop_assert_eq!(bare.mid_p.to_bits(), padded.mid_p.to_bits());
        }

        #[test]
        fn midp_below_exact_conditional_p(b in 0usize..40, c in 0usize..40) {
            prop_assume!(b + c > 0 && b != c);
            let n = b + c;
            let k = b.min(c);
            let exact_two_sided = (2.0 * binomial_half_cdf(n, k)).min(1.0);
            let mid = midp_from_counts(b, c);
            prop_assert!(
                mid < exact_two_sided,
                "mid {mid} !< exact {exact_two_sided} for b={b} c={c}"
            );
        }
    }
}
