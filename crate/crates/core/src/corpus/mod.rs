//! Benchmark corpora: CodeSearchNet-style JSONL records, BigCloneBench-style
//! function and pair files, and the anonymized variants built from them.

mod build;
mod clone;
mod codesearch;
mod split;
mod variant;

use std::io;
use std::path::PathBuf;

use serde::Serialize;

pub use build::{
    build_clone_variant, build_code_search_variant, rewrite_code_tokens, strip_docstring, BuildOptions,
    BuildReport, CategoryCounts, PairFileStats,
};
pub use clone::{
    read_clone_corpus, read_clone_functions, read_clone_pairs, write_clone_functions, CloneCorpus,
    CloneFunctionRecord, ClonePairRecord,
};
pub use codesearch::{read_code_search_corpus, write_code_search_corpus, CodeSearchReader, CodeSearchRecord};
pub use split::split;
pub use variant::{Task, VariantConfig, VARIANT_COUNT};

use crate::anonymize::AnonymizeError;
use crate::language::SourceLanguage;

/// What to do with a malformed line or a record that fails to anonymize.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReadMode {
    /// Abort on the first problem.
    #[default]
    Strict,
    /// Skip the line or record and count it.
    Lenient,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecordIssue {
    /// 1-based input line, when known.
    pub line: Option<usize>,
    pub record: Option<String>,
    pub reason: String,
}

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("line {line}: {reason}")]
    Format { line: usize, reason: String },
    #[error("pair references missing function index {0}")]
    DanglingIndex(String),
    #[error("duplicate function index {0}")]
    DuplicateIndex(String),
    #[error("record {record}: {source}")]
    Record {
        record: String,
        #[source]
        source: AnonymizeError,
    },
    #[error("record {record}: language {found} is not part of this variant")]
    LanguageMismatch { record: String, found: SourceLanguage },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

impl CorpusError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CorpusError::Io { path: path.into(), source }
    }
}
