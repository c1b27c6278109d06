use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::RawLabel;

/// Where `ACTION` sentences go in the three-class task.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ActionPolicy {
    #[default]
    Nc,
    Cc,
}

/// Maps the four annotated labels onto the classes of a classification task.
///
/// Class order is fixed per task and doubles as the tie-break order of every
/// classifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "task", rename_all = "kebab-case")]
pub enum LabelMapping {
    /// CA, CC, ACTION, NC unchanged.
    Raw4,
    /// CA, CC, NC with ACTION folded into one of them.
    Three { action: ActionPolicy },
    /// POS for CA, NEG for everything else.
    BinaryCa,
    /// COND for CA and CC, NC for ACTION and NC.
    MergedCond,
}

impl Default for LabelMapping {
    fn default() -> Self {
        LabelMapping::Three { action: ActionPolicy::Nc }
    }
}

impl LabelMapping {
    pub fn classes(self) -> &'static [&'static str] {
        match self {
            LabelMapping::Raw4 => &["CA", "CC", "ACTION", "NC"],
            LabelMapping::Three { .. } => &["CA", "CC", "NC"],
            LabelMapping::BinaryCa => &["POS", "NEG"],
            LabelMapping::MergedCond => &["COND", "NC"],
        }
    }

    /// Index of the class carrying condition-action sentences.
    pub fn positive_class(self) -> usize {
        0
    }

    pub fn map(self, label: RawLabel) -> &'static str {
        use RawLabel::*;
        match (self, label) {
            (LabelMapping::Raw4, l) => l.as_str(),
            (LabelMapping::Three { .. }, Ca) => "CA",
            (LabelMapping::Three { .. }, Cc) => "CC",
            (LabelMapping::Three { .. }, Nc) => "NC",
            (LabelMapping::Three { action: ActionPolicy::Nc }, Action) => "NC",
            (LabelMapping::Three { action: ActionPolicy::Cc }, Action) => "CC",
            (LabelMapping::BinaryCa, Ca) => "POS",
            (LabelMapping::BinaryCa, _) => "NEG",
            (LabelMapping::MergedCond, Ca | Cc) => "COND",
            (LabelMapping::MergedCond, Action | Nc) => "NC",
        }
    }

    pub fn class_of(self, label: RawLabel) -> usize {
        let name = self.map(label);
        self.classes().iter().position(|c| *c == name).expect("mapping targets a declared class")
    }

    /// Maps a label name that is either a raw label or one of this task's
    /// classes. Task classes map to themselves, so the mapping is idempotent.
    pub fn map_name(self, name: &str) -> Option<&'static str> {
        if let Some(&c) = self.classes().iter().find(|c| **c == name) {
            return Some(c);
        }
        name.parse::<RawLabel>().ok().map(|l| self.map(l))
    }

    pub fn name(self) -> &'static str {
        match self {
            LabelMapping::Raw4 => "raw4",
            LabelMapping::Three { action: ActionPolicy::Nc } => "three",
            LabelMapping::Three { action: ActionPolicy::Cc } => "three-action-cc",
            LabelMapping::BinaryCa => "binary-ca",
            LabelMapping::MergedCond => "merged-cond",
        }
    }
}

impl fmt::Display for LabelMapping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LabelMapping {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "raw4" => LabelMapping::Raw4,
            "three" => LabelMapping::Three { action: ActionPolicy::Nc },
            "three-action-cc" => LabelMapping::Three { action: ActionPolicy::Cc },
            "binary-ca" => LabelMapping::BinaryCa,
            "merged-cond" => LabelMapping::MergedCond,
            other => return Err(format!("unknown label mapping {other:?}")),
        })
    }
}
