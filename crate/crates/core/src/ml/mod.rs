//! Classifiers over binary feature vectors: ZeroR, Bernoulli Naive Bayes,
//! an unpruned C4.5 tree and a random forest of C4.5 trees.
//!
//! Labels are class indices into a fixed class list; every argmax tie goes
//! to the lowest index.

mod forest;
mod naive_bayes;
mod tree;
mod zeror;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::features::Vocabulary;
use crate::scalar::Real;

pub use forest::{train_random_forest, ForestConfig, ForestTree, RandomForest};
pub use naive_bayes::{train_naive_bayes, NaiveBayes};
pub use tree::{train_c45, DecisionTree, TreeConfig, TreeNode};
pub use zeror::{train_zeror, ZeroR};

pub const MODEL_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MlError {
    #[error("training set is empty")]
    EmptyTrainingSet,
    #[error("invalid configuration: {0}")]
    BadConfig(String),
    #[error("expected {expected} features, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("label {label} out of range for {classes} classes")]
    LabelOutOfRange { label: usize, classes: usize },
    #[error("{rows} rows but {labels} labels")]
    LengthMismatch { rows: usize, labels: usize },
}

/// Borrowed, validated training data.
#[derive(Debug, Clone, Copy)]
pub struct TrainingSet<'a> {
    x: &'a [Vec<bool>],
    y: &'a [usize],
    n_features: usize,
    n_classes: usize,
}

impl<'a> TrainingSet<'a> {
    pub fn new(x: &'a [Vec<bool>], y: &'a [usize], n_features: usize, n_classes: usize) -> Result<Self, MlError> {
        if x.len() != y.len() {
            return Err(MlError::LengthMismatch { rows: x.len(), labels: y.len() });
        }
        if x.is_empty() {
            return Err(MlError::EmptyTrainingSet);
        }
        if let Some(row) = x.iter().find(|r| r.len() != n_features) {
            return Err(MlError::DimensionMismatch { expected: n_features, found: row.len() });
        }
        if let Some(&label) = y.iter().find(|&&l| l >= n_classes) {
            return Err(MlError::LabelOutOfRange { label, classes: n_classes });
        }
        Ok(Self { x, y, n_features, n_classes })
    }

    pub fn rows(&self) -> &'a [Vec<bool>] {
        self.x
    }

    pub fn labels(&self) -> &'a [usize] {
        self.y
    }

    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }

    pub fn n_features(&self) -> usize {
        self.n_features
    }

    pub fn n_classes(&self) -> usize {
        self.n_classes
    }

    pub fn class_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.n_classes];
        for &l in self.y {
            counts[l] += 1;
        }
        counts
    }
}

/// Index of the largest count; ties go to the lowest index.
pub(crate) fn argmax_first<T: PartialOrd + Copy>(values: &[T]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate().skip(1) {
        if *v > values[best] {
            best = i;
        }
    }
    best
}

/// Which classifier to train, with its hyperparameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "classifier", rename_all = "snake_case")]
pub enum ClassifierConfig {
    Zeror,
    NaiveBayes { alpha: f64 },
    C45(TreeConfig),
    RandomForest(ForestConfig),
}

impl ClassifierConfig {
    pub fn naive_bayes() -> Self {
        ClassifierConfig::NaiveBayes { alpha: 1.0 }
    }

    pub fn c45() -> Self {
        ClassifierConfig::C45(TreeConfig::default())
    }

    pub fn random_forest() -> Self {
        ClassifierConfig::RandomForest(ForestConfig::default())
    }

    /// Name printed in result tables.
    pub fn display_name(&self) -> &'static str {
        match self {
            ClassifierConfig::Zeror => "ZeroR",
            ClassifierConfig::NaiveBayes { .. } => "NaiveBayes",
            ClassifierConfig::C45(_) => "C4.5",
            ClassifierConfig::RandomForest(_) => "RandomForest",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
pub enum ModelParams<T> {
    Zeror(ZeroR),
    NaiveBayes(NaiveBayes<T>),
    C45(DecisionTree),
    RandomForest(RandomForest),
}

/// A trained classifier together with everything needed to apply it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
pub struct TrainedModel<T> {
    pub format_version: u32,
    pub config: ClassifierConfig,
    pub seed: u64,
    pub classes: Vec<String>,
    pub n_features: usize,
    /// Column names of the feature vectors, when trained from a corpus.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vocabulary: Option<Vocabulary>,
    pub params: ModelParams<T>,
}

impl<T: Real> TrainedModel<T> {
    pub fn with_vocabulary(mut self, vocabulary: Vocabulary) -> Self {
        self.vocabulary = Some(vocabulary);
        self
    }

    pub fn predict(&self, x: &[bool]) -> Result<usize, MlError> {
        if x.len() != self.n_features {
            return Err(MlError::DimensionMismatch { expected: self.n_features, found: x.len() });
        }
        Ok(match &self.params {
            ModelParams::Zeror(m) => m.predict(),
            ModelParams::NaiveBayes(m) => m.predict(x),
            ModelParams::C45(m) => m.predict(x),
            ModelParams::RandomForest(m) => m.predict(x, self.classes.len()),
        })
    }

    pub fn predict_label(&self, x: &[bool]) -> Result<&str, MlError> {
        self.predict(x).map(|c| self.classes[c].as_str())
    }

    pub fn predict_all(&self, rows: &[Vec<bool>]) -> Result<Vec<usize>, MlError> {
        rows.iter().map(|r| self.predict(r)).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Trains the configured classifier. `seed` only matters for forests.
pub fn train<T: Real>(
    config: &ClassifierConfig,
    data: &TrainingSet<'_>,
    classes: &[String],
    seed: u64,
) -> Result<TrainedModel<T>, MlError> {
    if classes.len() != data.n_classes() {
        return Err(MlError::BadConfig(format!("{} class names for {} classes", classes.len(), data.n_classes())));
    }
    let params = match config {
        ClassifierConfig::Zeror => ModelParams::Zeror(train_zeror(data)?),
        ClassifierConfig::NaiveBayes { alpha } => {
            let alpha = T::from_f64(*alpha).ok_or_else(|| MlError::BadConfig(format!("alpha {alpha}")))?;
            ModelParams::NaiveBayes(train_naive_bayes(data, alpha)?)
        }
        ClassifierConfig::C45(cfg) => ModelParams::C45(train_c45::<T>(data, cfg)?),
        ClassifierConfig::RandomForest(cfg) => ModelParams::RandomForest(train_random_forest::<T>(data, cfg, seed)?),
    };
    Ok(TrainedModel {
        format_version: MODEL_FORMAT_VERSION,
        config: config.clone(),
        seed,
        classes: classes.to_vec(),
        n_features: data.n_features(),
        vocabulary: None,
        params,
    })
}
