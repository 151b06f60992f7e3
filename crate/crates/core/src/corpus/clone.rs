use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use super::codesearch::RawLine;
use super::{CorpusError, ReadMode, RecordIssue};

/// One function of the clone benchmark.
#[derive(Debug, Clone)]
pub struct CloneFunctionRecord {
    pub line: usize,
    /// `idx` normalized to text; the original JSON spelling is kept for output.
    pub idx: String,
    pub func: String,
    raw: RawLine,
}

impl PartialEq for CloneFunctionRecord {
    fn eq(&self, other: &Self) -> bool {
        self.to_json_line() == other.to_json_line()
    }
}

impl CloneFunctionRecord {
    pub fn parse(text: &str, line: usize) -> Result<Self, CorpusError> {
        let format = |reason: String| CorpusError::Format { line, reason };
        let raw = RawLine::parse(text).map_err(|e| format(format!("invalid JSON object: {e}")))?;
        let idx = raw.get("idx").ok_or_else(|| format("missing `idx`".into()))?;
        let idx = match serde_json::from_str::<serde_json::Value>(idx) {
            Ok(serde_json::Value::String(s)) => s,
            Ok(serde_json::Value::Number(n)) if n.is_u64() || n.is_i64() => n.to_string(),
            _ => return Err(format("`idx` must be a string or an integer".into())),
        };
        let func: String = match raw.typed("func") {
            None => return Err(format("missing `func`".into())),
            Some(Err(_)) => return Err(format("`func` must be a string".into())),
            Some(Ok(f)) => f,
        };
        Ok(CloneFunctionRecord { line, idx, func, raw })
    }

    pub fn raw_field(&self, key: &str) -> Option<&str> {
        self.raw.get(key)
    }

    pub fn set_func(&mut self, func: String) {
        self.raw.set("func", &func);
        self.func = func;
    }

    pub fn to_json_line(&self) -> String {
        self.raw.to_line()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClonePairRecord {
    pub idx1: String,
    pub idx2: String,
    pub label: bool,
}

/// Functions indexed by `idx`, plus the pairs that reference them.
#[derive(Debug, Clone, Default)]
pub struct CloneCorpus {
    pub functions: Vec<CloneFunctionRecord>,
    pub pairs: Vec<ClonePairRecord>,
    index: HashMap<String, usize>,
}

impl CloneCorpus {
    pub fn new(functions: Vec<CloneFunctionRecord>, pairs: Vec<ClonePairRecord>) -> Result<Self, CorpusError> {
        let index = index_functions(&functions)?;
        for pair in &pairs {
            for idx in [&pair.idx1, &pair.idx2] {
                if !index.contains_key(idx) {
                    return Err(CorpusError::DanglingIndex(idx.clone()));
                }
            }
        }
        Ok(CloneCorpus { functions, pairs, index })
    }

    pub fn function(&self, idx: &str) -> Option<&CloneFunctionRecord> {
        self.index.get(idx).map(|&i| &self.functions[i])
    }

    pub fn positives(&self) -> usize {
        self.pairs.iter().filter(|p| p.label).count()
    }
}

fn index_functions(functions: &[CloneFunctionRecord]) -> Result<HashMap<String, usize>, CorpusError> {
    let mut index = HashMap::with_capacity(functions.len());
    for (i, f) in functions.iter().enumerate() {
        if index.insert(f.idx.clone(), i).is_some() {
            return Err(CorpusError::DuplicateIndex(f.idx.clone()));
        }
    }
    Ok(index)
}

pub(crate) fn parse_clone_functions<R: Read>(
    reader: R,
    mode: ReadMode,
    issues: &mut Vec<RecordIssue>,
) -> Result<Vec<CloneFunctionRecord>, CorpusError> {
    let mut out = Vec::new();
    for (i, text) in BufReader::new(reader).lines().enumerate() {
        let line = i + 1;
        let text = text.map_err(|e| CorpusError::Format { line, reason: e.to_string() })?;
        if text.trim().is_empty() {
            continue;
        }
        match CloneFunctionRecord::parse(&text, line) {
            Ok(record) => out.push(record),
            Err(err) if mode == ReadMode::Lenient => {
                issues.push(RecordIssue { line: Some(line), record: None, reason: err.to_string() })
            }
            Err(err) => return Err(err),
        }
    }
    Ok(out)
}

pub(crate) fn parse_clone_pairs<R: Read>(reader: R) -> Result<Vec<ClonePairRecord>, CorpusError> {
    let mut out = Vec::new();
    for (i, text) in BufReader::new(reader).lines().enumerate() {
        let line = i + 1;
        let text = text.map_err(|e| CorpusError::Format { line, reason: e.to_string() })?;
        let fields: Vec<&str> = text.split_whitespace().collect();
        match fields.as_slice() {
            [] => continue,
            [a, b, label] => {
                let label = match *label {
                    "0" => false,
                    "1" => true,
                    other => {
                        return Err(CorpusError::Format { line, reason: format!("label must be 0 or 1, got `{other}`") })
                    }
                };
                out.push(ClonePairRecord { idx1: a.to_string(), idx2: b.to_string(), label });
            }
            _ => {
                return Err(CorpusError::Format {
                    line,
                    reason: format!("expected `idx1 idx2 label`, got {} fields", fields.len()),
                })
            }
        }
    }
    Ok(out)
}

pub fn read_clone_functions(path: &Path, mode: ReadMode) -> Result<(Vec<CloneFunctionRecord>, Vec<RecordIssue>), CorpusError> {
    let file = File::open(path).map_err(|e| CorpusError::io(path, e))?;
    let mut issues = Vec::new();
    let functions = parse_clone_functions(file, mode, &mut issues)?;
    Ok((functions, issues))
}

pub fn read_clone_pairs(path: &Path) -> Result<Vec<ClonePairRecord>, CorpusError> {
    let file = File::open(path).map_err(|e| CorpusError::io(path, e))?;
    parse_clone_pairs(file)
}

/// Read the functions file and one pair file, checking that every pair resolves.
pub fn read_clone_corpus(functions_path: &Path, pairs_path: &Path) -> Result<CloneCorpus, CorpusError> {
    let (functions, _) = read_clone_functions(functions_path, ReadMode::Strict)?;
    let pairs = read_clone_pairs(pairs_path)?;
    CloneCorpus::new(functions, pairs)
}

pub fn write_clone_functions<'a>(
    path: &Path,
    functions: impl IntoIterator<Item = &'a CloneFunctionRecord>,
) -> Result<(), CorpusError> {
    let file = File::create(path).map_err(|e| CorpusError::io(path, e))?;
    let mut out = BufWriter::new(file);
    for f in functions {
        writeln!(out, "{}", f.to_json_line()).map_err(|e| CorpusError::io(path, e))?;
    }
    out.flush().map_err(|e| CorpusError::io(path, e))
}
