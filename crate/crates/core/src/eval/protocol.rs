use std::collections::{HashMap, HashSet};

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::metrics::{mrr, rank_of, Confusion, TieBreak};
use super::report::{EvalReport, Metric, ReportConfig, SweepPoint};
use super::{Document, EvalError, Scorer};
use crate::corpus::{CloneFunctionRecord, ClonePairRecord, CodeSearchRecord, Task};
use crate::language::SourceLanguage;
use crate::lexer::tokenize;
use crate::seed::{derive_indexed, derive_seed};

pub const DEFAULT_DISTRACTORS: usize = 999;
pub const DEFAULT_THRESHOLD: f64 = 0.5;

/// Where each query's distractors come from.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistractorPool {
    /// A fresh seeded sample without replacement for every query.
    #[default]
    PerQuery,
    /// One seeded sample shared by all queries, minus the query's own item.
    Fixed,
}

impl DistractorPool {
    pub fn as_str(self) -> &'static str {
        match self {
            DistractorPool::PerQuery => "per-query",
            DistractorPool::Fixed => "fixed",
        }
    }
}

impl std::str::FromStr for DistractorPool {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "per-query" => Ok(DistractorPool::PerQuery),
            "fixed" => Ok(DistractorPool::Fixed),
            _ => Err(format!("unknown distractor pool `{s}` (expected per-query or fixed)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeSearchOptions {
    pub distractors: usize,
    pub seed: u64,
    pub ties: TieBreak,
    pub pool: DistractorPool,
    pub variant_id: Option<String>,
}

impl Default for CodeSearchOptions {
    fn default() -> Self {
        CodeSearchOptions {
            distractors: DEFAULT_DISTRACTORS,
            seed: 0,
            ties: TieBreak::Pessimistic,
            pool: DistractorPool::PerQuery,
            variant_id: None,
        }
    }
}

/// One query and its gold snippet.
#[derive(Debug, Clone, Copy)]
pub struct SearchItem<'a> {
    pub id: &'a str,
    pub query: &'a [String],
    pub code: &'a [String],
}

/// Distractor indices for query `i` among `n` items, never including `i`.
pub fn distractor_indices(n: usize, i: usize, options: &CodeSearchOptions, fixed: &[usize]) -> Vec<usize> {
    let k = options.distractors.min(n - 1);
    match options.pool {
        DistractorPool::PerQuery => {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_indexed(options.seed, i as u64));
            sample(&mut rng, n - 1, k).into_iter().map(|j| if j < i { j } else { j + 1 }).collect()
        }
        DistractorPool::Fixed => fixed.iter().copied().filter(|&j| j != i).take(k).collect(),
    }
}

fn fixed_pool(n: usize, options: &CodeSearchOptions) -> Vec<usize> {
    if options.pool != DistractorPool::Fixed {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(options.seed, "fixed-distractors"));
    sample(&mut rng, n, (options.distractors + 1).min(n)).into_vec()
}

/// Rank of every item's gold snippet for its own query.
pub fn code_search_ranks<S: Scorer>(
    items: &[SearchItem<'_>],
    scorer: &S,
    options: &CodeSearchOptions,
) -> Result<Vec<usize>, EvalError> {
    let n = items.len();
    if n < 2 {
        return Err(EvalError::CorpusTooSmall(n));
    }
    let queries: Vec<S::Prepared> =
        items.par_iter().map(|it| scorer.prepare(Document { id: it.id, tokens: it.query })).collect();
    let codes: Vec<S::Prepared> =
        items.par_iter().map(|it| scorer.prepare(Document { id: it.id, tokens: it.code })).collect();
    let fixed = fixed_pool(n, options);
    (0..n)
        .into_par_iter()
        .map(|i| {
            let score = |j: usize| {
                let s = scorer.score(&queries[i], &codes[j])?;
                if s.is_nan() {
                    return Err(EvalError::InvalidScore { query: items[i].id.into(), candidate: items[j].id.into() });
                }
                Ok(s)
            };
            let gold = score(i)?;
            let distractors = distractor_indices(n, i, options, &fixed)
                .into_iter()
                .map(score)
                .collect::<Result<Vec<_>, _>>()?;
            Ok(rank_of(gold, distractors, options.ties))
        })
        .collect()
}

/// Code-search MRR: every record's docstring tokens are the query, its own
/// code tokens the gold candidate.
pub fn run_code_search_eval<S: Scorer>(
    records: &[CodeSearchRecord],
    scorer: &S,
    options: &CodeSearchOptions,
) -> Result<EvalReport, EvalError> {
    let keys: Vec<String> = records.iter().map(CodeSearchRecord::key).collect();
    let items: Vec<SearchItem<'_>> = records
        .iter()
        .zip(&keys)
        .map(|(r, k)| SearchItem { id: k, query: &r.docstring_tokens, code: &r.code_tokens })
        .collect();
    let ranks = code_search_ranks(&items, scorer, options)?;
    let n = ranks.len();
    let effective = options.distractors.min(n - 1);
    Ok(EvalReport {
        task: Task::CodeSearch,
        metric: Metric::Mrr,
        value: mrr(&ranks)?,
        n,
        precision: None,
        recall: None,
        confusion: None,
        config: ReportConfig {
            variant_id: options.variant_id.clone(),
            scorer: scorer.name(),
            seed: Some(options.seed),
            distractors: Some(options.distractors),
            effective_distractors: Some(effective),
            distractor_pool: Some(options.pool),
            ties: Some(options.ties),
            ..ReportConfig::default()
        },
        sweep: Vec::new(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CloneEvalOptions {
    pub threshold: f64,
    /// Extra thresholds reported alongside the main one.
    pub sweep: Vec<f64>,
    pub variant_id: Option<String>,
}

impl Default for CloneEvalOptions {
    fn default() -> Self {
        CloneEvalOptions { threshold: DEFAULT_THRESHOLD, sweep: Vec::new(), variant_id: None }
    }
}

/// Similarity of each pair, in pair order.
pub fn clone_scores<S: Scorer>(
    functions: &[CloneFunctionRecord],
    pairs: &[ClonePairRecord],
    scorer: &S,
) -> Result<Vec<f64>, EvalError> {
    let by_idx: HashMap<&str, &CloneFunctionRecord> = functions.iter().map(|f| (f.idx.as_str(), f)).collect();
    let mut needed: Vec<&str> = Vec::new();
    let mut seen = HashSet::new();
    for p in pairs {
        for idx in [p.idx1.as_str(), p.idx2.as_str()] {
            if !by_idx.contains_key(idx) {
                return Err(EvalError::DanglingIndex(idx.to_string()));
            }
            if seen.insert(idx) {
                needed.push(idx);
            }
        }
    }
    let prepared: HashMap<&str, S::Prepared> = needed
        .par_iter()
        .map(|idx| {
            let stream = tokenize(&by_idx[idx].func, SourceLanguage::Java)
                .map_err(|source| EvalError::Lex { idx: idx.to_string(), source })?;
            let tokens = stream.significant_texts();
            Ok((*idx, scorer.prepare(Document { id: idx, tokens: &tokens })))
        })
        .collect::<Result<_, EvalError>>()?;
    pairs
        .par_iter()
        .map(|p| {
            let s = scorer.score(&prepared[p.idx1.as_str()], &prepared[p.idx2.as_str()])?;
            if s.is_nan() {
                return Err(EvalError::InvalidScore { query: p.idx1.clone(), candidate: p.idx2.clone() });
            }
            Ok(s)
        })
        .collect()
}

fn sweep_point(threshold: f64, scores: &[f64], labels: &[bool]) -> SweepPoint {
    let predicted: Vec<bool> = scores.iter().map(|&s| s >= threshold).collect();
    let confusion = Confusion::from_predictions(&predicted, labels);
    let s = confusion.scores();
    SweepPoint { threshold, precision: s.precision, recall: s.recall, f1: s.f1, confusion }
}

/// Clone-detection F1 from precomputed pair scores.
pub fn clone_report(scores: &[f64], labels: &[bool], scorer: String, options: &CloneEvalOptions) -> Result<EvalReport, EvalError> {
    if scores.is_empty() {
        return Err(EvalError::EmptyInput);
    }
    for t in std::iter::once(&options.threshold).chain(&options.sweep) {
        if !t.is_finite() {
            return Err(EvalError::InvalidConfig(format!("threshold {t} is not finite")));
        }
    }
    let main = sweep_point(options.threshold, scores, labels);
    Ok(EvalReport {
        task: Task::CloneDetection,
        metric: Metric::F1,
        value: main.f1,
        n: scores.len(),
        precision: Some(main.precision),
        recall: Some(main.recall),
        confusion: Some(main.confusion),
        config: ReportConfig {
            variant_id: options.variant_id.clone(),
            scorer,
            threshold: Some(options.threshold),
            zero_division: Some(0.0),
            ..ReportConfig::default()
        },
        sweep: options.sweep.iter().map(|&t| sweep_point(t, scores, labels)).collect(),
    })
}

/// Predict a clone when the similarity reaches the threshold and score the
/// predictions against the pair labels.
pub fn run_clone_eval<S: Scorer>(
    functions: &[CloneFunctionRecord],
    pairs: &[ClonePairRecord],
    scorer: &S,
    options: &CloneEvalOptions,
) -> Result<EvalReport, EvalError> {
    let scores = clone_scores(functions, pairs, scorer)?;
    let labels: Vec<bool> = pairs.iter().map(|p| p.label).collect();
    clone_report(&scores, &labels, scorer.name(), options)
}
