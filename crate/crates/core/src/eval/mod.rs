//! Code-search MRR and clone-detection F1 over pluggable scorers.

mod external;
mod lexical;
mod metrics;
mod protocol;
mod report;

use std::path::PathBuf;

pub use external::{import_external_scores, ScoreTable};
pub use lexical::{lexical_score, sub_tokens, LexicalScorer, TermVector};
pub use metrics::{f1, mrr, rank_of, Confusion, F1Scores, TieBreak};
pub use protocol::{
    clone_report, clone_scores, code_search_ranks, distractor_indices, run_clone_eval, run_code_search_eval,
    CloneEvalOptions, CodeSearchOptions, DistractorPool, SearchItem, DEFAULT_DISTRACTORS, DEFAULT_THRESHOLD,
};
pub use report::{EvalReport, Metric, ReportConfig, SweepPoint};

use crate::lexer::LexError;

/// A token list with the identifier external score tables know it by.
#[derive(Debug, Clone, Copy)]
pub struct Document<'a> {
    pub id: &'a str,
    pub tokens: &'a [String],
}

/// Similarity between a query and a candidate, higher is more similar.
///
/// Documents are prepared once and scored many times. Implementations must
/// be deterministic; clone evaluation also expects them to be symmetric.
pub trait Scorer: Sync {
    type Prepared: Send + Sync;

    fn name(&self) -> String;
    fn prepare(&self, doc: Document<'_>) -> Self::Prepared;
    fn score(&self, query: &Self::Prepared, candidate: &Self::Prepared) -> Result<f64, EvalError>;
}

#[derive(Debug, thiserror::Error)]
pub enum EvalError {
    #[error("no samples to evaluate")]
    EmptyInput,
    #[error("ranks are 1-based; got 0")]
    InvalidRank,
    #[error("code search needs at least 2 records, got {0}")]
    CorpusTooSmall(usize),
    #[error("pair references missing function index {0}")]
    DanglingIndex(String),
    #[error("no score for query {query} and candidate {candidate}")]
    MissingScore { query: String, candidate: String },
    #[error("score for query {query} and candidate {candidate} is not a number")]
    InvalidScore { query: String, candidate: String },
    #[error("line {line}: {reason}")]
    Format { line: usize, reason: String },
    #[error("function {idx}: {source}")]
    Lex {
        idx: String,
        #[source]
        source: LexError,
    },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
