//! Condition-action sentence mining for clinical guidelines.
//!
//! The pipeline reads bracketed constituency parses, finds candidate
//! condition subtrees (`SBAR`/`PP` opened by `IN`, `SBAR` opened by
//! `WHADVP`, `PP` opened by `TO`), turns their tag sequences into feature
//! tokens, and cross-validates ZeroR, Naive Bayes, C4.5 and random forest
//! classifiers over the resulting binary vectors.
//!
//! Numeric code is generic over [`Real`] (`f32` or `f64`); the aliases below
//! fix the scalar for the common cases.

pub mod candidates;
pub mod corpus;
pub mod eval;
pub mod features;
pub mod ml;
pub mod scalar;
pub mod treebank;

pub use candidates::{find_condition_candidates, is_candidate_sentence, CandidateMatch, Pattern};
pub use corpus::{filter_candidates, load_corpus, AnnotatedSentence, Dataset, LabelMapping, RawLabel};
pub use eval::{cross_validate, ConfusionMatrix, EvalError};
pub use features::{build_vocabulary, extract_features, vectorize, FeatureBag, Vocabulary};
pub use ml::{ClassifierConfig, MlError, TrainingSet};
pub use scalar::Real;
pub use treebank::{parse_ptb, preorder_labels, serialize, ParseTree, TreeError};

pub type Model = ml::TrainedModel<f64>;
pub type ModelF32 = ml::TrainedModel<f32>;
pub type NaiveBayes = ml::NaiveBayes<f64>;
pub type NaiveBayesF32 = ml::NaiveBayes<f32>;
pub type Report = eval::EvaluationReport<f64>;
pub type ReportF32 = eval::EvaluationReport<f32>;
pub type ReportSet = eval::ReportSet<f64>;
pub type Metrics = eval::Metrics<f64>;
pub type MetricsF32 = eval::Metrics<f32>;
