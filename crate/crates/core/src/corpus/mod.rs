//! Annotated guideline corpora: loading, label mapping, candidate filtering
//! and per-guideline statistics.

mod labels;
mod stats;
pub mod synthetic;

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::candidates::is_candidate_sentence;
use crate::treebank::{parse_ptb, ParseTree, TreeError};

pub use labels::{ActionPolicy, LabelMapping};
pub use stats::{corpus_stats, LabelCounts, StatsRow, StatsTable};

/// Gold annotation of one sentence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RawLabel {
    /// Condition-action.
    #[serde(rename = "CA")]
    Ca,
    /// Condition-consequence (effect, intention, event).
    #[serde(rename = "CC")]
    Cc,
    #[serde(rename = "ACTION")]
    Action,
    /// No condition.
    #[serde(rename = "NC")]
    Nc,
}

impl RawLabel {
    pub const ALL: [RawLabel; 4] = [RawLabel::Ca, RawLabel::Cc, RawLabel::Action, RawLabel::Nc];

    pub fn as_str(self) -> &'static str {
        match self {
            RawLabel::Ca => "CA",
            RawLabel::Cc => "CC",
            RawLabel::Action => "ACTION",
            RawLabel::Nc => "NC",
        }
    }
}

impl fmt::Display for RawLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RawLabel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RawLabel::ALL
            .into_iter()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| s.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnotatedSentence {
    pub id: String,
    pub guideline: String,
    pub text: String,
    pub parse: String,
    pub label: RawLabel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorpusFormat {
    Jsonl,
    Tsv,
}

impl FromStr for CorpusFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "jsonl" => Ok(CorpusFormat::Jsonl),
            "tsv" => Ok(CorpusFormat::Tsv),
            other => Err(format!("unknown corpus format {other:?}")),
        }
    }
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: missing field {field:?}")]
    MissingField { line: usize, field: &'static str },
    #[error("sentence {id:?}: bad label {label:?}")]
    BadLabel { id: String, label: String },
    #[error("sentence {id:?}: bad parse: {source}")]
    BadParse { id: String, source: TreeError },
    #[error("duplicate sentence id {0:?}")]
    DuplicateId(String),
}

/// Validated sentences with their parsed trees and the active label mapping.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    sentences: Vec<AnnotatedSentence>,
    trees: Vec<ParseTree>,
    mapping: LabelMapping,
}

impl Dataset {
    pub fn new(sentences: Vec<AnnotatedSentence>, mapping: LabelMapping) -> Result<Self, CorpusError> {
        let mut seen = HashSet::new();
        let mut trees = Vec::with_capacity(sentences.len());
        for s in &sentences {
            if !seen.insert(s.id.as_str()) {
                return Err(CorpusError::DuplicateId(s.id.clone()));
            }
            let tree = parse_ptb(&s.parse).map_err(|source| CorpusError::BadParse { id: s.id.clone(), source })?;
            trees.push(tree);
        }
        Ok(Self { sentences, trees, mapping })
    }

    pub fn empty(mapping: LabelMapping) -> Self {
        Self { sentences: Vec::new(), trees: Vec::new(), mapping }
    }

    pub fn len(&self) -> usize {
        self.sentences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.is_empty()
    }

    pub fn sentences(&self) -> &[AnnotatedSentence] {
        &self.sentences
    }

    pub fn trees(&self) -> &[ParseTree] {
        &self.trees
    }

    pub fn iter(&self) -> impl Iterator<Item = (&AnnotatedSentence, &ParseTree)> {
        self.sentences.iter().zip(&self.trees)
    }

    pub fn mapping(&self) -> LabelMapping {
        self.mapping
    }

    pub fn with_mapping(mut self, mapping: LabelMapping) -> Self {
        self.mapping = mapping;
        self
    }

    /// Class names under the active mapping, in tie-break order.
    pub fn classes(&self) -> Vec<String> {
        self.mapping.classes().iter().map(|c| c.to_string()).collect()
    }

    /// Class index of every sentence under the active mapping.
    pub fn task_labels(&self) -> Vec<usize> {
        self.sentences.iter().map(|s| self.mapping.class_of(s.label)).collect()
    }

    pub fn ids(&self) -> Vec<&str> {
        self.sentences.iter().map(|s| s.id.as_str()).collect()
    }

    fn subset(&self, keep: impl Fn(usize) -> bool) -> Dataset {
        let (sentences, trees) = self
            .sentences
            .iter()
            .zip(&self.trees)
            .enumerate()
            .filter(|(i, _)| keep(*i))
            .map(|(_, (s, t))| (s.clone(), t.clone()))
            .unzip();
        Dataset { sentences, trees, mapping: self.mapping }
    }

    /// Sentences of one guideline document.
    pub fn guideline(&self, name: &str) -> Dataset {
        self.subset(|i| self.sentences[i].guideline == name)
    }

    /// Distinct guideline names, alphabetical.
    pub fn guidelines(&self) -> Vec<String> {
        let set: std::collections::BTreeSet<&str> = self.sentences.iter().map(|s| s.guideline.as_str()).collect();
        set.into_iter().map(str::to_string).collect()
    }
}

pub fn load_corpus(path: &Path, format: CorpusFormat) -> Result<Dataset, CorpusError> {
    let text = std::fs::read_to_string(path).map_err(|source| CorpusError::Io { path: path.to_path_buf(), source })?;
    parse_corpus(&text, format)
}

/// Parses corpus text under the default three-class mapping.
pub fn parse_corpus(text: &str, format: CorpusFormat) -> Result<Dataset, CorpusError> {
    let sentences = match format {
        CorpusFormat::Jsonl => parse_jsonl(text)?,
        CorpusFormat::Tsv => parse_tsv(text)?,
    };
    Dataset::new(sentences, LabelMapping::default())
}

const FIELDS: [&str; 5] = ["id", "guideline", "text", "parse", "label"];

fn build_sentence(line: usize, mut get: impl FnMut(&'static str) -> Result<Option<String>, CorpusError>) -> Result<AnnotatedSentence, CorpusError> {
    let mut values: [String; 5] = Default::default();
    for (slot, field) in values.iter_mut().zip(FIELDS) {
        *slot = get(field)?.ok_or(CorpusError::MissingField { line, field })?;
    }
    let [id, guideline, text, parse, label] = values;
    let label = label.parse::<RawLabel>().map_err(|label| CorpusError::BadLabel { id: id.clone(), label })?;
    Ok(AnnotatedSentence { id, guideline, text, parse, label })
}

fn parse_jsonl(text: &str) -> Result<Vec<AnnotatedSentence>, CorpusError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let value: Value = serde_json::from_str(raw).map_err(|e| CorpusError::Malformed { line, message: e.to_string() })?;
        let Value::Object(obj) = value else {
            return Err(CorpusError::Malformed { line, message: "expected a JSON object".into() });
        };
        let sentence = build_sentence(line, |field| match obj.get(field) {
            None | Some(Value::Null) => Ok(None),
            Some(Value::String(s)) => Ok(Some(s.clone())),
            Some(_) => Err(CorpusError::Malformed { line, message: format!("field {field:?} must be a string") }),
        })?;
        out.push(sentence);
    }
    Ok(out)
}

// Header line naming the five columns is required; column order is free.
fn parse_tsv(text: &str) -> Result<Vec<AnnotatedSentence>, CorpusError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let Some((_, header)) = lines.next() else {
        return Ok(Vec::new());
    };
    let columns: Vec<&str> = header.split('\t').map(str::trim).collect();
    let mut positions = [0usize; 5];
    for (pos, field) in positions.iter_mut().zip(FIELDS) {
        *pos = columns
            .iter()
            .position(|c| *c == field)
            .ok_or(CorpusError::MissingField { line: 1, field })?;
    }
    let mut out = Vec::new();
    for (i, raw) in lines {
        let line = i + 1;
        let cells: Vec<&str> = raw.split('\t').collect();
        let sentence = build_sentence(line, |field| {
            let idx = FIELDS.iter().position(|f| *f == field).unwrap();
            Ok(cells.get(positions[idx]).map(|c| c.to_string()).filter(|c| !c.is_empty()))
        })?;
        out.push(sentence);
    }
    Ok(out)
}

pub fn to_jsonl(sentences: &[AnnotatedSentence]) -> String {
    let mut out = String::new();
    for s in sentences {
        out.push_str(&serde_json::to_string(s).expect("sentence serializes"));
        out.push('\n');
    }
    out
}

pub fn to_tsv(sentences: &[AnnotatedSentence]) -> String {
    let mut out = FIELDS.join("\t");
    out.push('\n');
    for s in sentences {
        let row = [s.id.as_str(), &s.guideline, &s.text, &s.parse, s.label.as_str()];
        out.push_str(&row.join("\t"));
        out.push('\n');
    }
    out
}

/// Kept/removed tallies for one guideline.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GuidelineFilter {
    pub input: usize,
    pub kept: usize,
    pub removed: usize,
    pub removed_by_label: BTreeMap<RawLabel, usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterReport {
    pub guidelines: BTreeMap<String, GuidelineFilter>,
}

impl FilterReport {
    pub fn kept(&self) -> usize {
        self.guidelines.values().map(|g| g.kept).sum()
    }

    pub fn removed(&self) -> usize {
        self.guidelines.values().map(|g| g.removed).sum()
    }
}

/// Keeps sentences that contain at least one candidate condition subtree.
pub fn filter_candidates(ds: &Dataset) -> (Dataset, FilterReport) {
    let keep: Vec<bool> = ds.trees.iter().map(is_candidate_sentence).collect();
    let mut report = FilterReport::default();
    for (s, &kept) in ds.sentences.iter().zip(&keep) {
        let entry = report.guidelines.entry(s.guideline.clone()).or_default();
        entry.input += 1;
        if kept {
            entry.kept += 1;
        } else {
            entry.removed += 1;
            *entry.removed_by_label.entry(s.label).or_default() += 1;
        }
    }
    (ds.subset(|i| keep[i]), report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(id: &str, guideline: &str, parse: &str, label: &str) -> String {
        serde_json::json!({"id": id, "guideline": guideline, "text": "t", "parse": parse, "label": label}).to_string()
    }

    const WITH_PP: &str = "(ROOT (S (NP (NN x)) (VP (VBZ is) (PP (IN in) (NP (NN y))))))";
    const PLAIN: &str = "(ROOT (S (NP (NN Adjustment)) (VP (VBZ is) (ADJP (JJ necessary)))))";

    #[test]
    fn loads_single_row() {
        let ds = parse_corpus(&row("h1", "hypertension", "(ROOT (S (NP (NN x))))", "CA"), CorpusFormat::Jsonl).unwrap();
        assert_eq!(ds.len(), 1);
        assert_eq!(ds.sentences()[0].label, RawLabel::Ca);
        assert_eq!(ds.trees()[0].label(), "ROOT");
    }

    #[test]
    fn rejects_bad_rows() {
        let err = parse_corpus(&row("h1", "g", "(NN x)", "MAYBE"), CorpusFormat::Jsonl).unwrap_err();
        assert!(matches!(err, CorpusError::BadLabel { ref label, .. } if label == "MAYBE"));

        let text = format!("{}\n{}\n", row("h1", "g", "(NN x)", "CA"), row("h1", "g", "(NN y)", "NC"));
        assert!(matches!(parse_corpus(&text, CorpusFormat::Jsonl), Err(CorpusError::DuplicateId(id)) if id == "h1"));

        let err = parse_corpus(&row("r7", "g", "(NN x", "CA"), CorpusFormat::Jsonl).unwrap_err();
        assert!(matches!(err, CorpusError::BadParse { ref id, .. } if id == "r7"));
        assert!(err.to_string().contains("r7"));

        let err = parse_corpus(r#"{"id":"a","guideline":"g","text":"t","label":"CA"}"#, CorpusFormat::Jsonl).unwrap_err();
        assert!(matches!(err, CorpusError::MissingField { line: 1, field: "parse" }));

        assert!(matches!(parse_corpus("{not json", CorpusFormat::Jsonl), Err(CorpusError::Malformed { line: 1, .. })));
    }

    #[test]
    fn empty_file_is_empty_dataset() {
        assert!(parse_corpus("", CorpusFormat::Jsonl).unwrap().is_empty());
        assert!(parse_corpus("\n\n", CorpusFormat::Tsv).unwrap().is_empty());
    }

    #[test]
    fn tsv_and_jsonl_agree() {
        let sentences = vec![
            AnnotatedSentence { id: "a1".into(), guideline: "asthma".into(), text: "In x , y .".into(), parse: WITH_PP.into(), label: RawLabel::Cc },
            AnnotatedSentence { id: "a2".into(), guideline: "asthma".into(), text: "Adjustment is necessary".into(), parse: PLAIN.into(), label: RawLabel::Action },
        ];
        let a = parse_corpus(&to_jsonl(&sentences), CorpusFormat::Jsonl).unwrap();
        let b = parse_corpus(&to_tsv(&sentences), CorpusFormat::Tsv).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.sentences(), &sentences[..]);
    }

    #[test]
    fn tsv_requires_header_columns() {
        let err = parse_corpus("id\tguideline\ttext\tlabel\n", CorpusFormat::Tsv).unwrap_err();
        assert!(matches!(err, CorpusError::MissingField { field: "parse", .. }));
    }

    #[test]
    fn filter_keeps_candidate_sentences() {
        let text = [row("a", "g1", WITH_PP, "CA"), row("b", "g1", PLAIN, "NC"), row("c", "g2", WITH_PP, "NC")].join("\n");
        let ds = parse_corpus(&text, CorpusFormat::Jsonl).unwrap();
        let (kept, report) = filter_candidates(&ds);
        assert_eq!(kept.ids(), ["a", "c"]);
        assert_eq!(report.kept(), 2);
        assert_eq!(report.removed(), 1);
        let g1 = &report.guidelines["g1"];
        assert_eq!((g1.input, g1.kept, g1.removed), (2, 1, 1));
        assert_eq!(g1.removed_by_label[&RawLabel::Nc], 1);

        let (kept, report) = filter_candidates(&Dataset::empty(LabelMapping::default()));
        assert!(kept.is_empty());
        assert_eq!(report.removed(), 0);
    }

    #[test]
    fn guideline_views() {
        let text = [row("a", "g2", WITH_PP, "CA"), row("b", "g1", PLAIN, "NC")].join("\n");
        let ds = parse_corpus(&text, CorpusFormat::Jsonl).unwrap();
        assert_eq!(ds.guidelines(), ["g1", "g2"]);
        assert_eq!(ds.guideline("g2").ids(), ["a"]);
    }
}
