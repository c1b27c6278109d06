use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{ClassMetrics, ConfusionMatrix};
use crate::corpus::LabelMapping;
use crate::ml::ClassifierConfig;
use crate::scalar::Real;

pub const REPORT_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportConfig {
    /// Free-form name printed as the table title.
    pub dataset: String,
    pub classifier: ClassifierConfig,
    pub seed: u64,
    pub folds: usize,
    pub label_mapping: LabelMapping,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldResult {
    pub fold: usize,
    pub train_size: usize,
    pub test_size: usize,
    pub vocabulary_size: usize,
    pub confusion: ConfusionMatrix,
}

/// Cross-validation outcome of one classifier on one dataset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
pub struct EvaluationReport<T> {
    pub format_version: u32,
    pub config: ReportConfig,
    pub classes: Vec<String>,
    /// Index of the condition-action class in `classes`.
    pub positive_class: usize,
    pub n_instances: usize,
    /// Pooled over folds, gold by predicted.
    pub confusion: ConfusionMatrix,
    pub per_class: Vec<ClassMetrics<T>>,
    pub accuracy: T,
    pub weighted_precision: T,
    pub folds: Vec<FoldResult>,
}

impl<T: Real> EvaluationReport<T> {
    pub fn named(mut self, dataset: impl Into<String>) -> Self {
        self.config.dataset = dataset.into();
        self
    }

    pub fn positive_metrics(&self) -> &ClassMetrics<T> {
        &self.per_class[self.positive_class]
    }

    pub fn metrics_for(&self, class: &str) -> Option<&ClassMetrics<T>> {
        self.per_class.iter().find(|m| m.class == class)
    }

    /// Pooled matrix covers every instance exactly once and equals the sum of the fold matrices.
    pub fn check_invariants(&self) -> Result<(), String> {
        if self.confusion.total() != self.n_instances {
            return Err(format!("confusion matrix sums to {} for {} instances", self.confusion.total(), self.n_instances));
        }
        let mut sum = ConfusionMatrix::new(self.classes.len());
        for f in &self.folds {
            sum.add(&f.confusion);
        }
        if sum != self.confusion {
            return Err("pooled confusion matrix differs from the sum of fold matrices".into());
        }
        let tests: usize = self.folds.iter().map(|f| f.test_size).sum();
        if tests != self.n_instances {
            return Err(format!("folds hold {tests} test instances for {} instances", self.n_instances));
        }
        if self.accuracy < T::zero() || self.accuracy > T::one() {
            return Err(format!("accuracy {} outside [0, 1]", self.accuracy));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Which figure fills the `Total` column of the results table.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum TotalColumn {
    #[default]
    WeightedPrecision,
    Accuracy,
}

/// Several reports on the same dataset, rendered as one table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
pub struct ReportSet<T> {
    pub reports: Vec<EvaluationReport<T>>,
}

const NUM_WIDTH: usize = 11;

fn fmt3<T: Real>(v: T) -> String {
    format!("{:.3}", v.to_f64().unwrap_or(f64::NAN))
}

fn positive_heading(class: &str) -> String {
    let name = match class {
        "CA" | "POS" => "Condition-Action",
        "COND" => "Condition",
        other => other,
    };
    format!("{name} ({class})")
}

impl<T: Real> ReportSet<T> {
    pub fn new(reports: Vec<EvaluationReport<T>>) -> Self {
        Self { reports }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report set serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// One row per classifier: positive-class precision, recall and
    /// F-measure, then the total column.
    pub fn render_table(&self, total: TotalColumn) -> String {
        let title = self.reports.first().map(|r| r.config.dataset.as_str()).unwrap_or("");
        let heading = self
            .reports
            .first()
            .map(|r| positive_heading(&r.classes[r.positive_class]))
            .unwrap_or_else(|| positive_heading("CA"));
        let name_width = self
            .reports
            .iter()
            .map(|r| r.config.classifier.display_name().len())
            .chain([title.chars().count(), "Classifier".len()])
            .max()
            .unwrap()
            + 2;
        let total_label = match total {
            TotalColumn::WeightedPrecision => "Precision",
            TotalColumn::Accuracy => "Accuracy",
        };

        let mut out = String::new();
        let _ = writeln!(
            out,
            "{title:<name_width$}{heading:<width3$}{:>NUM_WIDTH$}",
            "Total",
            width3 = 3 * NUM_WIDTH
        );
        let _ = writeln!(
            out,
            "{:<name_width$}{:>NUM_WIDTH$}{:>NUM_WIDTH$}{:>NUM_WIDTH$}{total_label:>NUM_WIDTH$}",
            "Classifier", "Precision", "Recall", "F-measure"
        );
        for r in &self.reports {
            let m = r.positive_metrics();
            let t = match total {
                TotalColumn::WeightedPrecision => r.weighted_precision,
                TotalColumn::Accuracy => r.accuracy,
            };
            let _ = writeln!(
                out,
                "{:<name_width$}{:>NUM_WIDTH$}{:>NUM_WIDTH$}{:>NUM_WIDTH$}{:>NUM_WIDTH$}",
                r.config.classifier.display_name(),
                fmt3(m.precision),
                fmt3(m.recall),
                fmt3(m.f_measure),
                fmt3(t)
            );
        }
        out
    }
}
