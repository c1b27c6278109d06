use std::fmt::Write as _;
use std::path::Path;

use anyhow::{Context, Result};
use cond_miner::corpus::synthetic::{generate, SyntheticConfig};
use cond_miner::corpus::{self, corpus_stats, ActionPolicy, CorpusFormat, FilterReport, GuidelineFilter};
use cond_miner::eval::TotalColumn;
use cond_miner::ml::{self, ForestConfig, TreeConfig};
use cond_miner::{
    build_vocabulary, cross_validate, extract_features, filter_candidates, find_condition_candidates, load_corpus,
    vectorize, ClassifierConfig, Dataset, FeatureBag, LabelMapping, Pattern, ReportSet, TrainingSet,
};
use serde::Serialize;

use crate::{write_output, Classifier, Command, CorpusArgs, Emit, Format, InvariantViolation, LabelMap, ModelArgs, Total};

/// One candidate subtree of one sentence.
#[derive(Debug, Serialize)]
pub struct MatchLine {
    pub sentence_id: String,
    pub guideline: String,
    pub pattern: Pattern,
    pub position: usize,
    pub subtree: String,
}

#[derive(Debug, Serialize)]
pub struct CandidateReport {
    pub kept: usize,
    pub removed: usize,
    pub guidelines: std::collections::BTreeMap<String, GuidelineFilter>,
    pub matches: Vec<MatchLine>,
}

#[derive(Debug, Serialize)]
pub struct FeatureLine {
    pub sentence_id: String,
    pub label: String,
    pub tokens: FeatureBag,
}

pub fn run(command: Command) -> Result<()> {
    match command {
        Command::Candidates { corpus, output } => {
            let ds = open(&corpus)?;
            let (kept, filter) = filter_candidates(&ds);
            log::info!("{} of {} sentences have candidate subtrees", kept.len(), ds.len());
            let report = candidate_report(&kept, filter);
            let text = match output.emit {
                Emit::Json => to_json_line(&report),
                Emit::Table => render_candidates(&report),
            };
            write_output(output.out.as_deref(), &text)
        }
        Command::Featurize { corpus, out, vocab } => {
            let ds = open(&corpus)?;
            let (kept, _) = filter_candidates(&ds);
            let bags: Vec<FeatureBag> = kept.trees().iter().map(extract_features).collect();
            let mut text = String::new();
            for ((s, _), bag) in kept.iter().zip(&bags) {
                let line = FeatureLine {
                    sentence_id: s.id.clone(),
                    label: kept.mapping().map(s.label).to_string(),
                    tokens: bag.clone(),
                };
                text.push_str(&to_json_line(&line));
            }
            write_output(out.as_deref(), &text)?;
            if let Some(path) = vocab {
                let vocabulary = build_vocabulary(&bags);
                log::info!("vocabulary of {} tokens", vocabulary.len());
                write_output(Some(&path), &to_json_line(&vocabulary))?;
            }
            Ok(())
        }
        Command::Train { corpus, model, classifier, out } => {
            let ds = open(&corpus)?;
            let (kept, _) = filter_candidates(&ds);
            let bags: Vec<FeatureBag> = kept.trees().iter().map(extract_features).collect();
            let vocabulary = build_vocabulary(&bags);
            let x: Vec<Vec<bool>> = bags.iter().map(|b| vectorize(b, &vocabulary)).collect();
            let y = kept.task_labels();
            let classes = kept.classes();
            let data = TrainingSet::new(&x, &y, vocabulary.len(), classes.len())?;
            let trained = ml::train::<f64>(&classifier_config(classifier, &model), &data, &classes, model.seed)?
                .with_vocabulary(vocabulary);
            let mut text = trained.to_json();
            text.push('\n');
            write_output(out.as_deref(), &text)
        }
        Command::Evaluate { corpus, model, classifier, folds, out, emit, total, name } => {
            let ds = open(&corpus)?;
            let (kept, filter) = filter_candidates(&ds);
            log::info!("evaluating on {} candidate sentences ({} removed)", kept.len(), filter.removed());
            let name = name.unwrap_or_else(|| {
                corpus.input.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
            });
            let mut reports = Vec::with_capacity(classifier.len());
            for c in classifier {
                let cfg = classifier_config(c, &model);
                let report = cross_validate::<f64>(&kept, &cfg, folds, model.seed)
                    .with_context(|| format!("evaluating {c}"))?
                    .named(name.clone());
                report.check_invariants().map_err(InvariantViolation)?;
                reports.push(report);
            }
            let set = ReportSet::new(reports);
            let mut json = set.to_json();
            json.push('\n');
            if let Some(path) = out.as_deref() {
                write_output(Some(path), &json)?;
            }
            match emit {
                Emit::Json => write_output(None, &json),
                Emit::Table => write_output(None, &set.render_table(total_column(total))),
            }
        }
        Command::Stats { corpus, output } => {
            let ds = open(&corpus)?;
            let table = corpus_stats(&ds);
            let text = match output.emit {
                Emit::Json => to_json_line(&table),
                Emit::Table => table.render(),
            };
            write_output(output.out.as_deref(), &text)
        }
        Command::GenerateSynthetic { size, seed, patternless, format, out } => {
            let generated = generate(&SyntheticConfig { size, seed, patternless });
            log::info!("{} sentences, {} without candidates", size, generated.patternless_ids.len());
            let text = match format {
                Format::Jsonl => corpus::to_jsonl(&generated.sentences),
                Format::Tsv => corpus::to_tsv(&generated.sentences),
            };
            write_output(out.as_deref(), &text)
        }
        Command::Render { input, total, out } => {
            let text = std::fs::read_to_string(&input).with_context(|| format!("cannot read {}", input.display()))?;
            let set = ReportSet::from_json(&text).with_context(|| format!("{} is not a report set", input.display()))?;
            for r in &set.reports {
                r.check_invariants().map_err(InvariantViolation)?;
            }
            write_output(out.as_deref(), &set.render_table(total_column(total)))
        }
    }
}

fn open(args: &CorpusArgs) -> Result<Dataset> {
    let format = match args.format {
        Some(f) => f,
        None => infer_format(&args.input),
    };
    let format = match format {
        Format::Jsonl => CorpusFormat::Jsonl,
        Format::Tsv => CorpusFormat::Tsv,
    };
    let ds = load_corpus(&args.input, format)?;
    log::debug!("loaded {} sentences from {}", ds.len(), args.input.display());
    Ok(ds.with_mapping(label_mapping(args.label_map)))
}

fn infer_format(path: &Path) -> Format {
    match path.extension().and_then(|e| e.to_str()) {
        Some("tsv") => Format::Tsv,
        _ => Format::Jsonl,
    }
}

fn label_mapping(map: LabelMap) -> LabelMapping {
    match map {
        LabelMap::Raw4 => LabelMapping::Raw4,
        LabelMap::Three => LabelMapping::Three { action: ActionPolicy::Nc },
        LabelMap::ThreeActionCc => LabelMapping::Three { action: ActionPolicy::Cc },
        LabelMap::BinaryCa => LabelMapping::BinaryCa,
        LabelMap::MergedCond => LabelMapping::MergedCond,
    }
}

fn classifier_config(c: Classifier, args: &ModelArgs) -> ClassifierConfig {
    match c {
        Classifier::Zeror => ClassifierConfig::Zeror,
        Classifier::Nb => ClassifierConfig::NaiveBayes { alpha: args.alpha },
        Classifier::C45 => ClassifierConfig::C45(TreeConfig { min_leaf: args.min_leaf, ..TreeConfig::default() }),
        Classifier::Rf => ClassifierConfig::RandomForest(ForestConfig {
            trees: args.trees,
            features_per_node: args.features_per_node,
            min_leaf: args.min_leaf,
            ..ForestConfig::default()
        }),
    }
}

fn total_column(total: Total) -> TotalColumn {
    match total {
        Total::WeightedPrecision => TotalColumn::WeightedPrecision,
        Total::Accuracy => TotalColumn::Accuracy,
    }
}

fn to_json_line<S: Serialize>(value: &S) -> String {
    let mut s = serde_json::to_string(value).expect("serializable");
    s.push('\n');
    s
}

fn candidate_report(kept: &Dataset, filter: FilterReport) -> CandidateReport {
    let mut matches = Vec::new();
    for (s, tree) in kept.iter() {
        for m in find_condition_candidates(tree) {
            matches.push(MatchLine {
                sentence_id: s.id.clone(),
                guideline: s.guideline.clone(),
                pattern: m.pattern,
                position: m.position,
                subtree: m.subtree.to_string(),
            });
        }
    }
    CandidateReport { kept: filter.kept(), removed: filter.removed(), guidelines: filter.guidelines, matches }
}

fn render_candidates(report: &CandidateReport) -> String {
    let mut out = String::new();
    for m in &report.matches {
        let _ = writeln!(out, "{}\t{}\t{}\t{}", m.sentence_id, m.pattern, m.position, m.subtree);
    }
    if !report.matches.is_empty() {
        out.push('\n');
    }
    let _ = writeln!(out, "{:<16}{:>8}{:>8}{:>8}", "Guideline", "Input", "Kept", "Removed");
    for (name, g) in &report.guidelines {
        let _ = writeln!(out, "{:<16}{:>8}{:>8}{:>8}", name, g.input, g.kept, g.removed);
    }
    let _ = writeln!(
        out,
        "{:<16}{:>8}{:>8}{:>8}",
        "Total",
        report.kept + report.removed,
        report.kept,
        report.removed
    );
    out
}
