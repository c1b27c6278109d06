//! Stratified k-fold cross-validation and the precision / recall /
//! F-measure report.

mod folds;
mod metrics;
mod report;

use rayon::prelude::*;
use thiserror::Error;

use crate::corpus::Dataset;
use crate::features::{build_vocabulary, extract_features, vectorize, FeatureBag};
use crate::ml::{self, ClassifierConfig, MlError, TrainingSet};
use crate::scalar::Real;

pub use folds::stratified_folds;
pub use metrics::{compute_metrics, ClassMetrics, ConfusionMatrix, Metrics};
pub use report::{EvaluationReport, FoldResult, ReportConfig, ReportSet, TotalColumn, REPORT_FORMAT_VERSION};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("{instances} instances cannot fill {folds} folds")]
    TooFewInstances { instances: usize, folds: usize },
    #[error("invalid configuration: {0}")]
    BadConfig(String),
    #[error("confusion matrix is empty")]
    EmptyMatrix,
    #[error(transparent)]
    Ml(#[from] MlError),
}

/// Seed handed to the classifier trained for fold `fold`.
pub fn fold_seed(seed: u64, fold: usize) -> u64 {
    seed ^ (fold as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Runs stratified k-fold cross-validation of one classifier.
///
/// For each fold the vocabulary is built from the training folds only, the
/// classifier is trained on them and the held-out fold is predicted. Metrics
/// are computed on the confusion matrix pooled over folds.
pub fn cross_validate<T: Real>(
    ds: &Dataset,
    classifier: &ClassifierConfig,
    k: usize,
    seed: u64,
) -> Result<EvaluationReport<T>, EvalError> {
    let bags: Vec<FeatureBag> = ds.trees().par_iter().map(extract_features).collect();
    let labels = ds.task_labels();
    let ids = ds.ids();
    let classes = ds.classes();
    let fold_of = stratified_folds(&ids, &labels, classes.len(), k, seed)?;

    let mut order: Vec<usize> = (0..ds.len()).collect();
    order.sort_by(|&a, &b| ids[a].cmp(ids[b]));

    let folds: Vec<FoldResult> = (0..k)
        .into_par_iter()
        .map(|fold| -> Result<FoldResult, EvalError> {
            let (test, train): (Vec<usize>, Vec<usize>) = order.iter().partition(|&&i| fold_of[i] == fold);
            let vocab = build_vocabulary(train.iter().map(|&i| &bags[i]));
            let x_train: Vec<Vec<bool>> = train.iter().map(|&i| vectorize(&bags[i], &vocab)).collect();
            let y_train: Vec<usize> = train.iter().map(|&i| labels[i]).collect();
            let data = TrainingSet::new(&x_train, &y_train, vocab.len(), classes.len())?;
            let model = ml::train::<T>(classifier, &data, &classes, fold_seed(seed, fold))?;

            let mut confusion = ConfusionMatrix::new(classes.len());
            for &i in &test {
                let predicted = model.predict(&vectorize(&bags[i], &vocab))?;
                confusion.record(labels[i], predicted);
            }
            log::debug!("fold {fold}: {} train, {} test, {} features", train.len(), test.len(), vocab.len());
            Ok(FoldResult { fold, train_size: train.len(), test_size: test.len(), vocabulary_size: vocab.len(), confusion })
        })
        .collect::<Result<_, _>>()?;

    let mut confusion = ConfusionMatrix::new(classes.len());
    for f in &folds {
        confusion.add(&f.confusion);
    }
    let metrics = compute_metrics::<T>(&confusion, &classes)?;
    let mapping = ds.mapping();
    Ok(EvaluationReport {
        format_version: REPORT_FORMAT_VERSION,
        config: ReportConfig {
            dataset: String::new(),
            classifier: classifier.clone(),
            seed,
            folds: k,
            label_mapping: mapping,
        },
        classes,
        positive_class: mapping.positive_class(),
        n_instances: ds.len(),
        confusion,
        per_class: metrics.per_class,
        accuracy: metrics.accuracy,
        weighted_precision: metrics.weighted_precision,
        folds,
    })
}
