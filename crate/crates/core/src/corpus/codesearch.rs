use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use indexmap::IndexMap;
use serde_json::value::RawValue;

use super::{CorpusError, ReadMode, RecordIssue};
use crate::language::SourceLanguage;

/// One JSON object line with the byte span of every top-level value, so
/// values can be replaced without reformatting the rest of the line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct RawLine {
    text: String,
    spans: IndexMap<String, (usize, usize)>,
    replaced: IndexMap<String, String>,
}

impl RawLine {
    pub(crate) fn parse(text: &str) -> Result<Self, serde_json::Error> {
        let fields: IndexMap<String, &RawValue> = serde_json::from_str(text)?;
        let base = text.as_ptr() as usize;
        let spans = fields
            .into_iter()
            .map(|(k, v)| {
                let start = v.get().as_ptr() as usize - base;
                (k, (start, start + v.get().len()))
            })
            .collect();
        Ok(RawLine { text: text.to_string(), spans, replaced: IndexMap::new() })
    }

    pub(crate) fn get(&self, key: &str) -> Option<&str> {
        if let Some(v) = self.replaced.get(key) {
            return Some(v);
        }
        self.spans.get(key).map(|&(s, e)| &self.text[s..e])
    }

    pub(crate) fn keys(&self) -> impl Iterator<Item = &str> {
        self.spans.keys().map(String::as_str)
    }

    pub(crate) fn typed<T: serde::de::DeserializeOwned>(&self, key: &str) -> Option<Result<T, serde_json::Error>> {
        self.get(key).map(serde_json::from_str)
    }

    /// Replace an existing field's value.
    pub(crate) fn set<T: serde::Serialize + ?Sized>(&mut self, key: &str, value: &T) {
        let raw = serde_json::to_string(value).expect("strings and string arrays serialize");
        let original = self.spans.get(key).map(|&(s, e)| &self.text[s..e]);
        if original == Some(raw.as_str()) {
            self.replaced.shift_remove(key);
        } else {
            self.replaced.insert(key.to_string(), raw);
        }
    }

    pub(crate) fn to_line(&self) -> String {
        if self.replaced.is_empty() {
            return self.text.clone();
        }
        let mut edits: Vec<(usize, usize, &str)> =
            self.replaced.iter().map(|(k, v)| (self.spans[k].0, self.spans[k].1, v.as_str())).collect();
        edits.sort_unstable_by_key(|e| e.0);
        let mut out = String::with_capacity(self.text.len());
        let mut at = 0;
        for (start, end, value) in edits {
            out.push_str(&self.text[at..start]);
            out.push_str(value);
            at = end;
        }
        out.push_str(&self.text[at..]);
        out
    }
}

/// One code/documentation pair. The input line is kept so that every field
/// other than the rewritten ones is emitted byte for byte.
#[derive(Debug, Clone)]
pub struct CodeSearchRecord {
    /// 1-based input line.
    pub line: usize,
    pub language: SourceLanguage,
    pub code: String,
    pub code_tokens: Vec<String>,
    pub docstring_tokens: Vec<String>,
    raw: RawLine,
}

impl PartialEq for CodeSearchRecord {
    fn eq(&self, other: &Self) -> bool {
        self.to_json_line() == other.to_json_line()
    }
}

impl CodeSearchRecord {
    pub fn parse(text: &str, line: usize) -> Result<Self, CorpusError> {
        let format = |reason: String| CorpusError::Format { line, reason };
        let raw = RawLine::parse(text).map_err(|e| format(format!("invalid JSON object: {e}")))?;
        fn field<T: serde::de::DeserializeOwned>(raw: &RawLine, key: &str, what: &str, line: usize) -> Result<T, CorpusError> {
            match raw.typed(key) {
                None => Err(CorpusError::Format { line, reason: format!("missing `{key}`") }),
                Some(Err(_)) => Err(CorpusError::Format { line, reason: format!("`{key}` must be {what}") }),
                Some(Ok(v)) => Ok(v),
            }
        }
        let code: String = field(&raw, "code", "a string", line)?;
        let code_tokens: Vec<String> = field(&raw, "code_tokens", "an array of strings", line)?;
        let docstring_tokens: Vec<String> = field(&raw, "docstring_tokens", "an array of strings", line)?;
        let language: String = field(&raw, "language", "a string", line)?;
        let language = language.parse().map_err(|e| format(format!("{e}")))?;
        Ok(CodeSearchRecord { line, language, code, code_tokens, docstring_tokens, raw })
    }

    /// Stable identity used for per-record seeds: the `url` field, else the line.
    pub fn key(&self) -> String {
        self.string_field("url").unwrap_or_else(|| format!("line:{}", self.line))
    }

    pub fn string_field(&self, key: &str) -> Option<String> {
        self.raw.typed(key).and_then(Result::ok)
    }

    /// Raw JSON text of a field as it will be written.
    pub fn raw_field(&self, key: &str) -> Option<&str> {
        self.raw.get(key)
    }

    pub fn field_names(&self) -> impl Iterator<Item = &str> {
        self.raw.keys()
    }

    pub fn set_code(&mut self, code: String) {
        self.raw.set("code", &code);
        self.code = code;
    }

    pub fn set_code_tokens(&mut self, tokens: Vec<String>) {
        self.raw.set("code_tokens", &tokens);
        self.code_tokens = tokens;
    }

    /// The record as one JSON line (no trailing newline), fields in input order.
    pub fn to_json_line(&self) -> String {
        self.raw.to_line()
    }
}

/// Streaming reader over a JSONL corpus.
pub struct CodeSearchReader<R> {
    lines: std::io::Lines<BufReader<R>>,
    line: usize,
    mode: ReadMode,
    issues: Vec<RecordIssue>,
    failed: bool,
}

impl<R: Read> CodeSearchReader<R> {
    pub fn new(reader: R, mode: ReadMode) -> Self {
        CodeSearchReader { lines: BufReader::new(reader).lines(), line: 0, mode, issues: Vec::new(), failed: false }
    }

    /// Lines skipped in lenient mode.
    pub fn issues(&self) -> &[RecordIssue] {
        &self.issues
    }

    pub fn into_issues(self) -> Vec<RecordIssue> {
        self.issues
    }
}

impl<R: Read> Iterator for CodeSearchReader<R> {
    type Item = Result<CodeSearchRecord, CorpusError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        loop {
            let text = match self.lines.next()? {
                Ok(text) => text,
                Err(e) => {
                    self.failed = true;
                    return Some(Err(CorpusError::Format { line: self.line + 1, reason: e.to_string() }));
                }
            };
            self.line += 1;
            if text.trim().is_empty() {
                continue;
            }
            match CodeSearchRecord::parse(&text, self.line) {
                Ok(record) => return Some(Ok(record)),
                Err(err) if self.mode == ReadMode::Lenient => {
                    self.issues.push(RecordIssue { line: Some(self.line), record: None, reason: err.to_string() });
                }
                Err(err) => {
                    self.failed = true;
                    return Some(Err(err));
                }
            }
        }
    }
}

pub fn read_code_search_corpus(
    path: &Path,
    mode: ReadMode,
) -> Result<CodeSearchReader<File>, CorpusError> {
    let file = File::open(path).map_err(|e| CorpusError::io(path, e))?;
    Ok(CodeSearchReader::new(file, mode))
}

pub fn write_code_search_corpus<'a>(
    path: &Path,
    records: impl IntoIterator<Item = &'a CodeSearchRecord>,
) -> Result<(), CorpusError> {
    let file = File::create(path).map_err(|e| CorpusError::io(path, e))?;
    let mut out = BufWriter::new(file);
    for record in records {
        writeln!(out, "{}", record.to_json_line()).map_err(|e| CorpusError::io(path, e))?;
    }
    out.flush().map_err(|e| CorpusError::io(path, e))
}
