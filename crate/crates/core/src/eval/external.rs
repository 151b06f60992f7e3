use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use serde::Deserialize;

use super::{Document, EvalError, Scorer};

#[derive(Deserialize)]
struct Row {
    query_id: String,
    candidate_id: String,
    score: f64,
}

/// Scores produced elsewhere, looked up by `(query_id, candidate_id)`.
#[derive(Debug, Clone, Default)]
pub struct ScoreTable {
    scores: HashMap<(String, String), f64>,
    symmetric: bool,
}

impl ScoreTable {
    pub fn from_reader<R: Read>(reader: R) -> Result<Self, EvalError> {
        let mut scores = HashMap::new();
        for (i, text) in BufReader::new(reader).lines().enumerate() {
            let line = i + 1;
            let text = text.map_err(|e| EvalError::Format { line, reason: e.to_string() })?;
            if text.trim().is_empty() {
                continue;
            }
            let row: Row = serde_json::from_str(&text).map_err(|e| EvalError::Format { line, reason: e.to_string() })?;
            if !row.score.is_finite() {
                return Err(EvalError::Format { line, reason: "score must be finite".into() });
            }
            if let Some(prev) = scores.insert((row.query_id.clone(), row.candidate_id.clone()), row.score) {
                if prev != row.score {
                    return Err(EvalError::Format {
                        line,
                        reason: format!("conflicting scores for ({}, {})", row.query_id, row.candidate_id),
                    });
                }
            }
        }
        Ok(ScoreTable { scores, symmetric: false })
    }

    /// Also answer `(b, a)` from a row for `(a, b)`, as clone scoring needs.
    pub fn symmetric(mut self) -> Self {
        self.symmetric = true;
        self
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    pub fn insert(&mut self, query: impl Into<String>, candidate: impl Into<String>, score: f64) {
        self.scores.insert((query.into(), candidate.into()), score);
    }

    pub fn lookup(&self, query: &str, candidate: &str) -> Result<f64, EvalError> {
        let key = (query.to_string(), candidate.to_string());
        let found = self.scores.get(&key).or_else(|| {
            if self.symmetric {
                self.scores.get(&(key.1.clone(), key.0.clone()))
            } else {
                None
            }
        });
        found.copied().ok_or(EvalError::MissingScore { query: key.0, candidate: key.1 })
    }
}

pub fn import_external_scores(path: &Path) -> Result<ScoreTable, EvalError> {
    let file = File::open(path).map_err(|e| EvalError::Io { path: path.to_path_buf(), source: e })?;
    ScoreTable::from_reader(file)
}

impl Scorer for ScoreTable {
    type Prepared = String;

    fn name(&self) -> String {
        "external".into()
    }

    fn prepare(&self, doc: Document<'_>) -> String {
        doc.id.to_string()
    }

    fn score(&self, query: &String, candidate: &String) -> Result<f64, EvalError> {
        self.lookup(query, candidate)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const GRID: &str = r#"{"query_id": "q1", "candidate_id": "c1", "score": 0.9}
{"query_id": "q1", "candidate_id": "c2", "score": 0.1}
{"query_id": "q2", "candidate_id": "c1", "score": 0.2}
{"query_id": "q2", "candidate_id": "c2", "score": 0.8}
"#;

    #[test]
    fn full_grid() {
        let table = ScoreTable::from_reader(GRID.as_bytes()).unwrap();
        assert_eq!(table.len(), 4);
        for q in ["q1", "q2"] {
            for c in ["c1", "c2"] {
                assert!(table.lookup(q, c).is_ok());
            }
        }
        assert_eq!(table.lookup("q2", "c2").unwrap(), 0.8);
    }

    #[test]
    fn absent_pair() {
        let table = ScoreTable::from_reader(GRID.as_bytes()).unwrap();
        match table.lookup("q3", "c1") {
            Err(EvalError::MissingScore { query, candidate }) => assert_eq!((query.as_str(), candidate.as_str()), ("q3", "c1")),
            other => panic!("expected missing score, got {other:?}"),
        }
        assert!(table.lookup("c1", "q1").is_err());
        assert_eq!(table.symmetric().lookup("c1", "q1").unwrap(), 0.9);
    }

    #[test]
    fn malformed_rows() {
        assert!(matches!(ScoreTable::from_reader("{\"query_id\": 1}\n".as_bytes()), Err(EvalError::Format { line: 1, .. })));
        let conflict = "{\"query_id\":\"a\",\"candidate_id\":\"b\",\"score\":1}\n{\"query_id\":\"a\",\"candidate_id\":\"b\",\"score\":0}\n";
        assert!(matches!(ScoreTable::from_reader(conflict.as_bytes()), Err(EvalError::Format { line: 2, .. })));
    }
}
