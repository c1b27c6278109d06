//! POS-tag feature tokens over candidate condition subtrees, and their
//! binary vectorization.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::candidates::find_condition_candidates;
use crate::treebank::{preorder_labels, ParseTree};

/// Width of the glued tag windows.
pub const WINDOW: usize = 3;

/// Ordered feature tokens of one sentence. Duplicates are kept.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FeatureBag {
    pub tokens: Vec<String>,
}

impl FeatureBag {
    pub fn new(tokens: Vec<String>) -> Self {
        Self { tokens }
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.tokens.iter().map(String::as_str)
    }

    /// Appends the tokens contributed by one candidate's label sequence:
    /// every label, every glued window of three, then all labels glued.
    pub fn push_candidate(&mut self, labels: &[&str]) {
        if labels.is_empty() {
            return;
        }
        self.tokens.extend(labels.iter().map(|l| l.to_string()));
        self.tokens.extend(labels.windows(WINDOW).map(|w| w.concat()));
        self.tokens.push(labels.concat());
    }

    pub fn joined(&self) -> String {
        self.tokens.join(" ")
    }
}

impl FromIterator<String> for FeatureBag {
    fn from_iter<I: IntoIterator<Item = String>>(iter: I) -> Self {
        Self { tokens: iter.into_iter().collect() }
    }
}

/// Feature tokens of a sentence, taken only from its candidate subtrees.
pub fn extract_features(tree: &ParseTree) -> FeatureBag {
    let mut bag = FeatureBag::default();
    for m in find_condition_candidates(tree) {
        bag.push_candidate(&preorder_labels(m.subtree));
    }
    bag
}

/// Token to column mapping, in first-seen order. Serialized as a JSON array.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "Vec<String>", into = "Vec<String>")]
pub struct Vocabulary {
    tokens: Vec<String>,
    index: HashMap<String, usize>,
}

impl Vocabulary {
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn get(&self, token: &str) -> Option<usize> {
        self.index.get(token).copied()
    }

    pub fn token(&self, column: usize) -> Option<&str> {
        self.tokens.get(column).map(String::as_str)
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    /// Adds `token` if unseen and returns its column.
    pub fn insert(&mut self, token: &str) -> usize {
        if let Some(&i) = self.index.get(token) {
            return i;
        }
        let i = self.tokens.len();
        self.tokens.push(token.to_string());
        self.index.insert(token.to_string(), i);
        i
    }
}

impl From<Vec<String>> for Vocabulary {
    fn from(tokens: Vec<String>) -> Self {
        let mut vocab = Vocabulary::default();
        for t in &tokens {
            vocab.insert(t);
        }
        vocab
    }
}

impl From<Vocabulary> for Vec<String> {
    fn from(v: Vocabulary) -> Self {
        v.tokens
    }
}

pub fn build_vocabulary<'a, I>(bags: I) -> Vocabulary
where
    I: IntoIterator<Item = &'a FeatureBag>,
{
    let mut vocab = Vocabulary::default();
    for bag in bags {
        for token in bag.iter() {
            vocab.insert(token);
        }
    }
    vocab
}

/// Binary presence vector. Tokens unknown to `vocab` are dropped.
pub fn vectorize(bag: &FeatureBag, vocab: &Vocabulary) -> Vec<bool> {
    let mut row = vec![false; vocab.len()];
    for token in bag.iter() {
        if let Some(j) = vocab.get(token) {
            row[j] = true;
        }
    }
    row
}

/// Vectorizes many bags in parallel, preserving order.
pub fn vectorize_all(bags: &[&FeatureBag], vocab: &Vocabulary) -> Vec<Vec<bool>> {
    bags.par_iter().map(|bag| vectorize(bag, vocab)).collect()
}
