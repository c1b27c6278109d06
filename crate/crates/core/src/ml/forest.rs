use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::tree::{grow, SparseRows};
use super::{argmax_first, DecisionTree, MlError, TrainingSet, TreeConfig};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct ForestConfig {
    pub trees: usize,
    /// Columns sampled at each node; `None` means `floor(log2 d) + 1`.
    pub features_per_node: Option<usize>,
    pub min_leaf: usize,
    /// Draw a bootstrap sample per tree; when false every tree sees all rows once.
    pub bootstrap: bool,
}

impl Default for ForestConfig {
    fn default() -> Self {
        Self { trees: 100, features_per_node: None, min_leaf: 2, bootstrap: true }
    }
}

impl ForestConfig {
    pub fn resolved_features(&self, n_features: usize) -> usize {
        self.features_per_node.unwrap_or_else(|| default_features_per_node(n_features))
    }
}

/// `floor(log2 d) + 1`, and 1 for `d <= 1`.
pub fn default_features_per_node(d: usize) -> usize {
    if d <= 1 {
        1
    } else {
        d.ilog2() as usize + 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForestTree {
    /// ChaCha stream the tree drew its bootstrap and column samples from.
    pub stream: u64,
    pub tree: DecisionTree,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomForest {
    pub seed: u64,
    pub features_per_node: usize,
    pub trees: Vec<ForestTree>,
}

impl RandomForest {
    pub fn votes(&self, x: &[bool], n_classes: usize) -> Vec<usize> {
        let mut votes = vec![0; n_classes];
        for t in &self.trees {
            votes[t.tree.predict(x)] += 1;
        }
        votes
    }

    pub fn predict(&self, x: &[bool], n_classes: usize) -> usize {
        argmax_first(&self.votes(x, n_classes))
    }
}

/// Random generator of tree `index`: its own stream under the master seed,
/// so trees can be grown in any order.
pub fn tree_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn train_random_forest<T: Real>(data: &TrainingSet<'_>, config: &ForestConfig, seed: u64) -> Result<RandomForest, MlError> {
    if config.trees < 1 {
        return Err(MlError::BadConfig("forest needs at least one tree".into()));
    }
    if config.features_per_node == Some(0) {
        return Err(MlError::BadConfig("features per node must be at least 1".into()));
    }
    if config.min_leaf < 1 {
        return Err(MlError::BadConfig("min_leaf must be at least 1".into()));
    }
    if data.is_empty() {
        return Err(MlError::EmptyTrainingSet);
    }
    let n = data.len();
    let d = data.n_features();
    let m = config.resolved_features(d);
    let sparse = SparseRows::new(data);
    let tree_config = TreeConfig { min_leaf: config.min_leaf, mean_gain_filter: false };

    let trees = (0..config.trees as u64)
        .into_par_iter()
        .map(|stream| {
            let mut rng = tree_rng(seed, stream);
            let rows: Vec<usize> = if config.bootstrap {
                (0..n).map(|_| rng.gen_range(0..n)).collect()
            } else {
                (0..n).collect()
            };
            let mut sample = |out: &mut Vec<usize>| {
                if m >= d {
                    out.extend(0..d);
                } else {
                    out.extend(rand::seq::index::sample(&mut rng, d, m).iter());
                    out.sort_unstable();
                }
            };
            let tree = grow::<T>(data, &sparse, rows, &tree_config, &mut sample);
            ForestTree { stream, tree }
        })
        .collect();
    Ok(RandomForest { seed, features_per_node: m, trees })
}
