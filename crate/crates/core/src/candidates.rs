//! Candidate condition subtrees.
//!
//! A node is a candidate when it opens one of three structures, matched on
//! the node label and the label of its first child (exact string equality):
//!
//! | pattern       | node          | first child |
//! |---------------|---------------|-------------|
//! | `SBAR_PP_IN`  | `SBAR` / `PP` | `IN`        |
//! | `SBAR_WHADVP` | `SBAR`        | `WHADVP`    |
//! | `PP_TO`       | `PP`          | `TO`        |
//!
//! Matches nested inside other matches are reported too.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::treebank::ParseTree;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pattern {
    #[serde(rename = "SBAR_PP_IN")]
    SbarPpIn,
    #[serde(rename = "SBAR_WHADVP")]
    SbarWhadvp,
    #[serde(rename = "PP_TO")]
    PpTo,
}

impl Pattern {
    pub const ALL: [Pattern; 3] = [Pattern::SbarPpIn, Pattern::SbarWhadvp, Pattern::PpTo];

    pub fn name(self) -> &'static str {
        match self {
            Pattern::SbarPpIn => "SBAR_PP_IN",
            Pattern::SbarWhadvp => "SBAR_WHADVP",
            Pattern::PpTo => "PP_TO",
        }
    }

    /// Whether `(node_label (first_child_label ...` opens this pattern.
    pub fn accepts(self, node_label: &str, first_child_label: &str) -> bool {
        match self {
            Pattern::SbarPpIn => matches!(node_label, "SBAR" | "PP") && first_child_label == "IN",
            Pattern::SbarWhadvp => node_label == "SBAR" && first_child_label == "WHADVP",
            Pattern::PpTo => node_label == "PP" && first_child_label == "TO",
        }
    }

    /// The pattern `node` opens, if any. The three patterns are disjoint.
    pub fn classify(node: &ParseTree) -> Option<Pattern> {
        let first = node.first_child()?;
        Pattern::ALL
            .into_iter()
            .find(|p| p.accepts(node.label(), first.label()))
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CandidateMatch<'a> {
    pub subtree: &'a ParseTree,
    pub pattern: Pattern,
    /// Pre-order index of the subtree root within the whole sentence tree.
    pub position: usize,
}

/// All candidate subtrees of a sentence in pre-order.
pub fn find_condition_candidates(tree: &ParseTree) -> Vec<CandidateMatch<'_>> {
    tree.preorder()
        .enumerate()
        .filter_map(|(position, subtree)| {
            Pattern::classify(subtree).map(|pattern| CandidateMatch { subtree, pattern, position })
        })
        .collect()
}

pub fn is_candidate_sentence(tree: &ParseTree) -> bool {
    tree.preorder().any(|n| Pattern::classify(n).is_some())
}
