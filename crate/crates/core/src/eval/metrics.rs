use serde::{Deserialize, Serialize};

use super::EvalError;
use crate::scalar::Real;

/// Gold (rows) by predicted (columns) counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ConfusionMatrix {
    counts: Vec<Vec<usize>>,
}

impl ConfusionMatrix {
    pub fn new(n_classes: usize) -> Self {
        Self { counts: vec![vec![0; n_classes]; n_classes] }
    }

    /// Square matrix from nested rows; `None` if ragged.
    pub fn from_rows(counts: Vec<Vec<usize>>) -> Option<Self> {
        let n = counts.len();
        counts.iter().all(|r| r.len() == n).then_some(Self { counts })
    }

    pub fn n_classes(&self) -> usize {
        self.counts.len()
    }

    pub fn record(&mut self, gold: usize, predicted: usize) {
        self.counts[gold][predicted] += 1;
    }

    pub fn get(&self, gold: usize, predicted: usize) -> usize {
        self.counts[gold][predicted]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.counts
    }

    pub fn add(&mut self, other: &ConfusionMatrix) {
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
        }
    }

    pub fn total(&self) -> usize {
        self.counts.iter().flatten().sum()
    }

    pub fn trace(&self) -> usize {
        (0..self.n_classes()).map(|i| self.counts[i][i]).sum()
    }

    pub fn gold_count(&self, c: usize) -> usize {
        self.counts[c].iter().sum()
    }

    pub fn predicted_count(&self, c: usize) -> usize {
        self.counts.iter().map(|r| r[c]).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
pub struct ClassMetrics<T> {
    pub class: String,
    pub support: usize,
    pub precision: T,
    pub recall: T,
    pub f_measure: T,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
pub struct Metrics<T> {
    pub per_class: Vec<ClassMetrics<T>>,
    pub accuracy: T,
    /// Precision averaged with weights equal to each class's gold share.
    pub weighted_precision: T,
}

fn ratio<T: Real>(num: usize, den: usize) -> T {
    if den == 0 {
        T::zero()
    } else {
        T::from_count(num) / T::from_count(den)
    }
}

/// Per-class precision, recall and F-measure, accuracy and weighted
/// precision. Undefined ratios are 0.
pub fn compute_metrics<T: Real>(cm: &ConfusionMatrix, classes: &[String]) -> Result<Metrics<T>, EvalError> {
    let total = cm.total();
    if cm.n_classes() == 0 || total == 0 {
        return Err(EvalError::EmptyMatrix);
    }
    if classes.len() != cm.n_classes() {
        return Err(EvalError::BadConfig(format!("{} class names for a {}-class matrix", classes.len(), cm.n_classes())));
    }
    let two = T::one() + T::one();
    let per_class: Vec<ClassMetrics<T>> = (0..cm.n_classes())
        .map(|c| {
            let tp = cm.get(c, c);
            let precision: T = ratio(tp, cm.predicted_count(c));
            let recall: T = ratio(tp, cm.gold_count(c));
            let sum = precision + recall;
            let f_measure = if sum > T::zero() { two * precision * recall / sum } else { T::zero() };
            ClassMetrics { class: classes[c].clone(), support: cm.gold_count(c), precision, recall, f_measure }
        })
        .collect();
    let weighted_precision = per_class
        .iter()
        .fold(T::zero(), |acc, m| acc + ratio::<T>(m.support, total) * m.precision);
    Ok(Metrics { accuracy: ratio(cm.trace(), total), weighted_precision, per_class })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: usize) -> Vec<String> {
        ["A", "B", "C"][..n].iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn perfect_diagonal() {
        let cm = ConfusionMatrix::from_rows(vec![vec![5, 0], vec![0, 5]]).unwrap();
        let m = compute_metrics::<f64>(&cm, &names(2)).unwrap();
        for c in &m.per_class {
            assert_eq!((c.precision, c.recall, c.f_measure), (1.0, 1.0, 1.0));
        }
        assert_eq!(m.accuracy, 1.0);
    }

    #[test]
    fn everything_predicted_as_a() {
        // gold 7 A / 3 B, all predicted A
        let cm = ConfusionMatrix::from_rows(vec![vec![7, 0], vec![3, 0]]).unwrap();
        let m = compute_metrics::<f64>(&cm, &names(2)).unwrap();
        assert_eq!(m.per_class[0].precision, 0.7);
        assert_eq!(m.per_class[0].recall, 1.0);
        assert!((m.per_class[0].f_measure - 2.0 * 0.7 / 1.7).abs() < 1e-15);
        assert_eq!((m.per_class[1].precision, m.per_class[1].recall, m.per_class[1].f_measure), (0.0, 0.0, 0.0));
        assert_eq!(m.accuracy, 0.7);
        assert!((m.weighted_precision - 0.49).abs() < 1e-15);
    }

    #[test]
    fn empty_gold_row_has_zero_recall() {
        let cm = ConfusionMatrix::from_rows(vec![vec![2, 1, 0], vec![0, 0, 0], vec![0, 1, 3]]).unwrap();
        let m = compute_metrics::<f64>(&cm, &names(3)).unwrap();
        assert_eq!(m.per_class[1].recall, 0.0);
        assert_eq!(m.per_class[1].precision, 0.0);
        assert_eq!(m.per_class[1].support, 0);
    }

    #[test]
    fn empty_matrix_is_an_error() {
        assert!(matches!(compute_metrics::<f64>(&ConfusionMatrix::new(0), &[]), Err(EvalError::EmptyMatrix)));
        assert!(matches!(compute_metrics::<f64>(&ConfusionMatrix::new(2), &names(2)), Err(EvalError::EmptyMatrix)));
    }

    #[test]
    fn addition_and_counts() {
        let mut a = ConfusionMatrix::new(2);
        a.record(0, 1);
        a.record(1, 1);
        let mut b = ConfusionMatrix::new(2);
        b.record(0, 0);
        a.add(&b);
        assert_eq!(a.rows(), [vec![1, 1], vec![0, 1]]);
        assert_eq!((a.total(), a.trace(), a.gold_count(0), a.predicted_count(1)), (3, 2, 2, 2));
        assert!(ConfusionMatrix::from_rows(vec![vec![1], vec![1, 2]]).is_none());
    }

    #[test]
    fn f32_metrics() {
        let cm = ConfusionMatrix::from_rows(vec![vec![3, 1], vec![0, 4]]).unwrap();
        let m = compute_metrics::<f32>(&cm, &names(2)).unwrap();
        assert_eq!(m.per_class[0].precision, 1.0);
        assert_eq!(m.per_class[0].recall, 0.75);
    }
}
