use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Dataset, RawLabel};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelCounts {
    #[serde(rename = "CA")]
    pub ca: usize,
    #[serde(rename = "CC")]
    pub cc: usize,
    #[serde(rename = "ACTION")]
    pub action: usize,
    #[serde(rename = "NC")]
    pub nc: usize,
}

impl LabelCounts {
    pub fn add(&mut self, label: RawLabel) {
        *self.slot(label) += 1;
    }

    fn slot(&mut self, label: RawLabel) -> &mut usize {
        match label {
            RawLabel::Ca => &mut self.ca,
            RawLabel::Cc => &mut self.cc,
            RawLabel::Action => &mut self.action,
            RawLabel::Nc => &mut self.nc,
        }
    }

    pub fn as_array(&self) -> [usize; 4] {
        [self.ca, self.cc, self.action, self.nc]
    }

    pub fn total(&self) -> usize {
        self.as_array().iter().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatsRow {
    pub guideline: String,
    pub counts: LabelCounts,
}

/// Guideline by label counts, rows in alphabetical guideline order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatsTable {
    pub rows: Vec<StatsRow>,
    pub total: LabelCounts,
}

const HEADERS: [&str; 4] = ["Condition-Action", "Condition-Effect", "Action", "No Condition"];

impl StatsTable {
    pub fn row(&self, guideline: &str) -> Option<&LabelCounts> {
        self.rows.iter().find(|r| r.guideline == guideline).map(|r| &r.counts)
    }

    /// Aligned text table. The total line is printed only when there are rows.
    pub fn render(&self) -> String {
        let name_width = self
            .rows
            .iter()
            .map(|r| r.guideline.chars().count())
            .chain([9, 5])
            .max()
            .unwrap();
        let mut out = String::new();
        let _ = write!(out, "{:<name_width$}", "Guideline");
        for h in HEADERS {
            let _ = write!(out, "  {h:>16}");
        }
        out.push('\n');
        let mut line = |name: &str, counts: &LabelCounts| {
            let _ = write!(out, "{name:<name_width$}");
            for c in counts.as_array() {
                let _ = write!(out, "  {c:>16}");
            }
            out.push('\n');
        };
        for r in &self.rows {
            line(&r.guideline, &r.counts);
        }
        if !self.rows.is_empty() {
            line("Total", &self.total);
        }
        out
    }
}

pub fn corpus_stats(ds: &Dataset) -> StatsTable {
    let mut per: BTreeMap<&str, LabelCounts> = BTreeMap::new();
    let mut total = LabelCounts::default();
    for s in ds.sentences() {
        per.entry(&s.guideline).or_default().add(s.label);
        total.add(s.label);
    }
    StatsTable {
        rows: per
            .into_iter()
            .map(|(g, counts)| StatsRow { guideline: g.to_string(), counts })
            .collect(),
        total,
    }
}
