use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::EvalError;

/// Assigns every row to one of `k` folds, stratified by class.
///
/// Rows are ordered by id, each class is shuffled with the seeded generator
/// (classes in index order, one shared stream), and the classes are dealt
/// round-robin across folds; the deal position carries over from one class
/// to the next so fold sizes stay within one of each other.
pub fn stratified_folds(ids: &[&str], labels: &[usize], n_classes: usize, k: usize, seed: u64) -> Result<Vec<usize>, EvalError> {
    if k < 2 {
        return Err(EvalError::BadConfig(format!("need at least 2 folds, got {k}")));
    }
    if ids.len() != labels.len() {
        return Err(EvalError::BadConfig(format!("{} ids but {} labels", ids.len(), labels.len())));
    }
    if labels.len() < k {
        return Err(EvalError::TooFewInstances { instances: labels.len(), folds: k });
    }
    let mut order: Vec<usize> = (0..ids.len()).collect();
    order.sort_by(|&a, &b| ids[a].cmp(ids[b]));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fold_of = vec![0usize; labels.len()];
    let mut next = 0usize;
    for class in 0..n_classes {
        let mut members: Vec<usize> = order.iter().copied().filter(|&i| labels[i] == class).collect();
        members.shuffle(&mut rng);
        for i in members {
            fold_of[i] = next;
            next = (next + 1) % k;
        }
    }
    Ok(fold_of)
}
