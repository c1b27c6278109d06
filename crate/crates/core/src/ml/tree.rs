use serde::{Deserialize, Serialize};

use super::{argmax_first, MlError, TrainingSet};
use crate::scalar::{entropy, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct TreeConfig {
    /// Minimum rows on each side of a split.
    pub min_leaf: usize,
    /// Only features with at least the mean information gain compete on gain ratio.
    pub mean_gain_filter: bool,
}

impl Default for TreeConfig {
    fn default() -> Self {
        Self { min_leaf: 2, mean_gain_filter: true }
    }
}

/// Node of a tree stored in a flat arena; the root is node 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub enum TreeNode {
    Leaf { label: usize, counts: Vec<usize> },
    /// Tests one binary column: `absent` for value 0, `present` for value 1.
    Split { feature: usize, absent: usize, present: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecisionTree {
    pub nodes: Vec<TreeNode>,
}

impl DecisionTree {
    pub fn predict(&self, x: &[bool]) -> usize {
        let mut i = 0;
        loop {
            match &self.nodes[i] {
                TreeNode::Leaf { label, .. } => return *label,
                TreeNode::Split { feature, absent, present } => {
                    i = if x[*feature] { *present } else { *absent };
                }
            }
        }
    }

    pub fn root(&self) -> &TreeNode {
        &self.nodes[0]
    }

    pub fn leaf_count(&self) -> usize {
        self.nodes.iter().filter(|n| matches!(n, TreeNode::Leaf { .. })).count()
    }

    pub fn depth(&self) -> usize {
        fn walk(nodes: &[TreeNode], i: usize) -> usize {
            match &nodes[i] {
                TreeNode::Leaf { .. } => 0,
                TreeNode::Split { absent, present, .. } => 1 + walk(nodes, *absent).max(walk(nodes, *present)),
            }
        }
        walk(&self.nodes, 0)
    }
}

/// Column indices of the set features of every row.
pub(crate) struct SparseRows {
    present: Vec<Vec<usize>>,
}

impl SparseRows {
    pub(crate) fn new(data: &TrainingSet<'_>) -> Self {
        let present = data
            .rows()
            .iter()
            .map(|row| row.iter().enumerate().filter(|(_, &on)| on).map(|(j, _)| j).collect())
            .collect();
        Self { present }
    }
}

/// Gain statistics for one candidate column at one node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct SplitScore<T> {
    pub feature: usize,
    pub gain: T,
    pub split_info: T,
}

/// Picks the split column among scored candidates: positive gain, optionally
/// at least the mean gain, then the best gain ratio (ties to the lowest column).
pub(crate) fn choose_split<T: Real>(scores: &[SplitScore<T>], mean_gain_filter: bool) -> Option<usize> {
    let tol = T::tolerance();
    if scores.is_empty() {
        return None;
    }
    let threshold = if mean_gain_filter {
        let sum = scores.iter().fold(T::zero(), |acc, s| acc + s.gain);
        sum / T::from_count(scores.len()) - tol
    } else {
        T::neg_infinity()
    };
    let mut best: Option<(usize, T)> = None;
    for s in scores {
        if s.gain <= tol || s.gain < threshold {
            continue;
        }
        let ratio = s.gain / s.split_info;
        if best.is_none_or(|(_, r)| ratio > r) {
            best = Some((s.feature, ratio));
        }
    }
    best.map(|(f, _)| f)
}

/// Grows one unpruned tree over `rows` (indices into `data`, repeats allowed).
///
/// `candidates` fills the sorted list of columns a node may split on; it is
/// called once per node that is not already a leaf, in pre-order.
pub(crate) fn grow<T: Real>(
    data: &TrainingSet<'_>,
    sparse: &SparseRows,
    rows: Vec<usize>,
    config: &TreeConfig,
    candidates: &mut dyn FnMut(&mut Vec<usize>),
) -> DecisionTree {
    let k = data.n_classes();
    let d = data.n_features();
    let labels = data.labels();
    let min_leaf = config.min_leaf;

    let mut nodes: Vec<TreeNode> = vec![TreeNode::Leaf { label: 0, counts: Vec::new() }];
    let mut work: Vec<(usize, Vec<usize>)> = vec![(0, rows)];
    let mut mask = vec![false; d];
    let mut on_counts = vec![0usize; d * k];
    let mut features = Vec::new();
    let mut scores: Vec<SplitScore<T>> = Vec::new();

    while let Some((slot, rows)) = work.pop() {
        let mut counts = vec![0usize; k];
        for &r in &rows {
            counts[labels[r]] += 1;
        }
        let n = rows.len();
        let pure = counts.iter().filter(|&&c| c > 0).count() <= 1;
        if pure || n < 2 * min_leaf {
            nodes[slot] = TreeNode::Leaf { label: argmax_first(&counts), counts };
            continue;
        }

        features.clear();
        candidates(&mut features);
        for &j in &features {
            mask[j] = true;
        }
        for &r in &rows {
            for &j in &sparse.present[r] {
                if mask[j] {
                    on_counts[j * k + labels[r]] += 1;
                }
            }
        }

        let node_entropy: T = entropy(&counts);
        let total = T::from_count(n);
        scores.clear();
        for &j in &features {
            let on = &on_counts[j * k..(j + 1) * k];
            let n_on: usize = on.iter().sum();
            let n_off = n - n_on;
            if n_on < min_leaf || n_off < min_leaf {
                continue;
            }
            let off: Vec<usize> = counts.iter().zip(on).map(|(c, o)| c - o).collect();
            let gain = node_entropy
                - T::from_count(n_off) / total * entropy::<T>(&off)
                - T::from_count(n_on) / total * entropy::<T>(on);
            scores.push(SplitScore { feature: j, gain, split_info: entropy(&[n_off, n_on]) });
        }
        for &j in &features {
            mask[j] = false;
            on_counts[j * k..(j + 1) * k].fill(0);
        }

        match choose_split(&scores, config.mean_gain_filter) {
            None => nodes[slot] = TreeNode::Leaf { label: argmax_first(&counts), counts },
            Some(feature) => {
                let (present_rows, absent_rows): (Vec<usize>, Vec<usize>) =
                    rows.into_iter().partition(|&r| data.rows()[r][feature]);
                let absent = nodes.len();
                let present = absent + 1;
                nodes.push(TreeNode::Leaf { label: 0, counts: Vec::new() });
                nodes.push(TreeNode::Leaf { label: 0, counts: Vec::new() });
                nodes[slot] = TreeNode::Split { feature, absent, present };
                work.push((present, present_rows));
                work.push((absent, absent_rows));
            }
        }
    }
    DecisionTree { nodes }
}

/// Unpruned C4.5 tree on all training rows and all columns.
pub fn train_c45<T: Real>(data: &TrainingSet<'_>, config: &TreeConfig) -> Result<DecisionTree, MlError> {
    if config.min_leaf < 1 {
        return Err(MlError::BadConfig("min_leaf must be at least 1".into()));
    }
    if data.is_empty() {
        return Err(MlError::EmptyTrainingSet);
    }
    let sparse = SparseRows::new(data);
    let d = data.n_features();
    let mut all = |out: &mut Vec<usize>| out.extend(0..d);
    Ok(grow::<T>(data, &sparse, (0..data.len()).collect(), config, &mut all))
}
