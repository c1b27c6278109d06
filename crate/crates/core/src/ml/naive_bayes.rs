use serde::{Deserialize, Serialize};

use super::{MlError, TrainingSet};
use crate::scalar::Real;

/// Bernoulli Naive Bayes with additive smoothing.
///
/// `prior[c] = n_c / n` and `feature_prob[c][j] = (count_jc + alpha) / (n_c + 2 alpha)`.
/// Classes absent from training keep prior 0 and are never predicted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
pub struct NaiveBayes<T> {
    pub alpha: T,
    pub class_counts: Vec<usize>,
    pub prior: Vec<T>,
    pub feature_prob: Vec<Vec<T>>,
}

impl<T: Real> NaiveBayes<T> {
    /// `log P(c) + sum_j log P(x_j | c)` per class; negative infinity for
    /// classes never seen in training.
    pub fn joint_log_likelihood(&self, x: &[bool]) -> Vec<T> {
        self.prior
            .iter()
            .zip(&self.feature_prob)
            .zip(&self.class_counts)
            .map(|((&prior, probs), &count)| {
                if count == 0 {
                    return T::neg_infinity();
                }
                probs
                    .iter()
                    .zip(x)
                    .fold(prior.ln(), |acc, (&p, &on)| acc + if on { p.ln() } else { (T::one() - p).ln() })
            })
            .collect()
    }

    pub fn predict(&self, x: &[bool]) -> usize {
        let scores = self.joint_log_likelihood(x);
        let mut best: Option<usize> = None;
        for (c, &s) in scores.iter().enumerate() {
            if self.class_counts[c] == 0 {
                continue;
            }
            if best.is_none_or(|b| s > scores[b]) {
                best = Some(c);
            }
        }
        best.expect("at least one class was trained")
    }
}

pub fn train_naive_bayes<T: Real>(data: &TrainingSet<'_>, alpha: T) -> Result<NaiveBayes<T>, MlError> {
    if !(alpha > T::zero() && alpha.is_finite()) {
        return Err(MlError::BadConfig(format!("smoothing alpha must be positive, got {alpha}")));
    }
    if data.is_empty() {
        return Err(MlError::EmptyTrainingSet);
    }
    let k = data.n_classes();
    let d = data.n_features();
    let class_counts = data.class_counts();
    let mut on_counts = vec![vec![0usize; d]; k];
    for (row, &label) in data.rows().iter().zip(data.labels()) {
        for (j, _) in row.iter().enumerate().filter(|(_, &on)| on) {
            on_counts[label][j] += 1;
        }
    }
    let n = T::from_count(data.len());
    let two = T::one() + T::one();
    let prior = class_counts.iter().map(|&c| T::from_count(c) / n).collect();
    let feature_prob = on_counts
        .iter()
        .zip(&class_counts)
        .map(|(counts, &n_c)| {
            let denom = T::from_count(n_c) + two * alpha;
            counts.iter().map(|&c| (T::from_count(c) + alpha) / denom).collect()
        })
        .collect();
    Ok(NaiveBayes { alpha, class_counts, prior, feature_prob })
}
