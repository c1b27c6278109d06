//! Seeded generator of small labeled guideline corpora with hand-built parses.
//!
//! Every class has a signature structure, so one feature token decides the
//! class of each sentence that survives candidate filtering:
//!
//! * `CA`: an `(SBAR (IN if) (S ...))` clause, token `SBARINS`;
//! * `CC`: a `(SBAR (WHADVP (WRB when)) ...)` clause, token `SBARWHADVPWRB`;
//! * `NC` with a candidate: a `PP` opened by `IN` or `TO`, token `PP`.
//!
//! Patternless sentences (labeled `NC` or `ACTION`) have no `SBAR` or `PP`
//! node at all and are removed by candidate filtering.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{AnnotatedSentence, RawLabel};
use crate::treebank::parse_ptb;

pub const GUIDELINES: [&str; 3] = ["asthma", "hypertension", "rhinosinusitis"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyntheticConfig {
    pub size: usize,
    pub seed: u64,
    /// Number of sentences without any candidate subtree. Defaults to 7 in 20.
    pub patternless: Option<usize>,
}

impl SyntheticConfig {
    pub fn new(size: usize, seed: u64) -> Self {
        Self { size, seed, patternless: None }
    }

    pub fn patternless_count(&self) -> usize {
        self.patternless.unwrap_or(self.size * 7 / 20).min(self.size)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntheticCorpus {
    pub sentences: Vec<AnnotatedSentence>,
    /// Ids of the sentences built without candidate structure.
    pub patternless_ids: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    ConditionAction,
    ConditionEffect,
    CandidateNoCondition,
    PlainNoCondition,
    PlainAction,
}

const CONDITIONS: &[&str] = &["A1C", "pressure", "cough", "fever", "wheeze", "eGFR", "creatinine"];
const CHANGES: &[&str] = &["persists", "rises", "worsens", "recurs", "exceeds"];
const ACTIONS: &[&str] = &["start", "add", "stop", "titrate", "review"];
const DRUGS: &[&str] = &["ACEI", "ARB", "amoxicillin", "budesonide", "salbutamol", "thiazide"];
const OUTCOMES: &[&str] = &["mortality", "control", "risk", "adherence", "function"];
const EFFECTS: &[&str] = &["improves", "declines", "increases", "stabilizes"];
const SUBJECTS: &[&str] = &["therapy", "evidence", "monitoring", "education", "imaging"];
const REPORTED: &[&str] = &["reported", "described", "studied", "summarized"];
const STUDIES: &[&str] = &["trials", "cohorts", "reviews", "guidelines"];
const QUALIFIERS: &[&str] = &["recent", "large", "randomized", "observational"];
const SYMPTOMS: &[&str] = &["fever", "pain", "dyspnea", "edema"];
const STEPS: &[&str] = &["Adjustment", "Referral", "Spirometry", "Counseling"];

fn pick<'a>(rng: &mut impl Rng, pool: &[&'a str]) -> &'a str {
    pool.choose(rng).copied().expect("non-empty pool")
}

fn noun_phrase(rng: &mut impl Rng, pool: &[&str]) -> String {
    let noun = pick(rng, pool);
    if rng.gen_bool(0.5) {
        format!("(NP (DT the) (NN {noun}))")
    } else {
        format!("(NP (NN {noun}))")
    }
}

fn build_parse(kind: Kind, rng: &mut impl Rng) -> String {
    match kind {
        Kind::ConditionAction => {
            let np = noun_phrase(rng, CONDITIONS);
            let marker = pick(rng, &["if", "once"]);
            format!(
                "(ROOT (S (SBAR (IN {marker}) (S {np} (VP (VBZ {})))) (, ,) (NP (NNS clinicians)) (VP (MD should) (VP (VB {}) (NP (NN {})))) (. .)))",
                pick(rng, CHANGES),
                pick(rng, ACTIONS),
                pick(rng, DRUGS)
            )
        }
        Kind::ConditionEffect => {
            let np = noun_phrase(rng, CONDITIONS);
            format!(
                "(ROOT (S (SBAR (WHADVP (WRB when)) (S {np} (VP (VBZ {})))) (, ,) (NP (NN {})) (VP (VBZ {})) (. .)))",
                pick(rng, CHANGES),
                pick(rng, OUTCOMES),
                pick(rng, EFFECTS)
            )
        }
        Kind::CandidateNoCondition => {
            let np = noun_phrase(rng, SUBJECTS);
            if rng.gen_bool(0.5) {
                format!(
                    "(ROOT (S {np} (VP (VBZ is) (VP (VBN {}) (PP (IN in) (NP (JJ {}) (NNS {}))))) (. .)))",
                    pick(rng, REPORTED),
                    pick(rng, QUALIFIERS),
                    pick(rng, STUDIES)
                )
            } else {
                format!("(ROOT (S {np} (VP (VBZ contributes) (PP (TO to) (NP (NN {})))) (. .)))", pick(rng, OUTCOMES))
            }
        }
        Kind::PlainNoCondition => format!(
            "(ROOT (S (NP (JJ most) (NNS patients)) (VP (VBP do) (RB not) (VP (VB have) (NP (NN {})))) (. .)))",
            pick(rng, SYMPTOMS)
        ),
        Kind::PlainAction => format!(
            "(ROOT (S (NP (NN {})) (VP (VBZ is) (ADJP (JJ necessary))) (. .)))",
            pick(rng, STEPS)
        ),
    }
}

fn label_of(kind: Kind) -> RawLabel {
    match kind {
        Kind::ConditionAction => RawLabel::Ca,
        Kind::ConditionEffect => RawLabel::Cc,
        Kind::CandidateNoCondition | Kind::PlainNoCondition => RawLabel::Nc,
        Kind::PlainAction => RawLabel::Action,
    }
}

pub fn generate(config: &SyntheticConfig) -> SyntheticCorpus {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let patternless = config.patternless_count();
    let mut kinds: Vec<Kind> = (0..patternless)
        .map(|i| if i % 2 == 0 { Kind::PlainNoCondition } else { Kind::PlainAction })
        .chain((0..config.size - patternless).map(|i| match i % 3 {
            0 => Kind::ConditionAction,
            1 => Kind::ConditionEffect,
            _ => Kind::CandidateNoCondition,
        }))
        .collect();
    kinds.shuffle(&mut rng);

    let width = config.size.max(1).to_string().len().max(4);
    let mut sentences = Vec::with_capacity(config.size);
    let mut patternless_ids = Vec::with_capacity(patternless);
    for (i, kind) in kinds.into_iter().enumerate() {
        let id = format!("syn-{:0width$}", i + 1);
        let parse = build_parse(kind, &mut rng);
        let text = parse_ptb(&parse).expect("generated parse is well formed").tokens().join(" ");
        if matches!(kind, Kind::PlainNoCondition | Kind::PlainAction) {
            patternless_ids.push(id.clone());
        }
        sentences.push(AnnotatedSentence {
            id,
            guideline: GUIDELINES[i % GUIDELINES.len()].to_string(),
            text,
            parse,
            label: label_of(kind),
        });
    }
    SyntheticCorpus { sentences, patternless_ids }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::candidates::is_candidate_sentence;
    use crate::corpus::{filter_candidates, Dataset, LabelMapping};
    use crate::features::extract_features;

    #[test]
    fn twenty_sentences_seven_patternless() {
        let corpus = generate(&SyntheticConfig::new(20, 1));
        assert_eq!(corpus.sentences.len(), 20);
        assert_eq!(corpus.patternless_ids.len(), 7);
        let ds = Dataset::new(corpus.sentences, LabelMapping::default()).unwrap();
        let (kept, report) = filter_candidates(&ds);
        assert_eq!((kept.len(), report.removed()), (13, 7));
    }

    #[test]
    fn deterministic_per_seed() {
        let a = generate(&SyntheticConfig::new(50, 9));
        assert_eq!(a, generate(&SyntheticConfig::new(50, 9)));
        assert_ne!(a, generate(&SyntheticConfig::new(50, 10)));
    }

    #[test]
    fn signature_tokens_decide_the_class() {
        let corpus = generate(&SyntheticConfig::new(200, 42));
        for s in &corpus.sentences {
            let tree = parse_ptb(&s.parse).unwrap();
            let patternless = corpus.patternless_ids.contains(&s.id);
            assert_eq!(is_candidate_sentence(&tree), !patternless, "{}", s.id);
            let bag = extract_features(&tree);
            let has = |t: &str| bag.iter().any(|x| x == t);
            if patternless {
                continue;
            }
            assert_eq!(has("SBARINS"), s.label == RawLabel::Ca);
            assert_eq!(has("SBARWHADVPWRB"), s.label == RawLabel::Cc);
            assert_eq!(has("PP"), s.label == RawLabel::Nc);
        }
    }

    #[test]
    fn explicit_patternless_count() {
        let corpus = generate(&SyntheticConfig { size: 10, seed: 3, patternless: Some(0) });
        assert!(corpus.patternless_ids.is_empty());
        let corpus = generate(&SyntheticConfig { size: 4, seed: 3, patternless: Some(99) });
        assert_eq!(corpus.patternless_ids.len(), 4);
    }
}
