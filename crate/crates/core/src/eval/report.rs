use std::fmt::Write as _;

use serde::Serialize;

use super::metrics::{Confusion, TieBreak};
use super::protocol::DistractorPool;
use crate::corpus::Task;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Metric {
    #[serde(rename = "MRR")]
    Mrr,
    F1,
    Precision,
    Recall,
}

impl Metric {
    pub fn as_str(self) -> &'static str {
        match self {
            Metric::Mrr => "MRR",
            Metric::F1 => "F1",
            Metric::Precision => "Precision",
            Metric::Recall => "Recall",
        }
    }
}

/// Settings the numbers were produced under.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct ReportConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant_id: Option<String>,
    pub scorer: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distractors: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub effective_distractors: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distractor_pool: Option<DistractorPool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ties: Option<TieBreak>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold: Option<f64>,
    /// Value used for precision or recall when the denominator is zero.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zero_division: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepPoint {
    pub threshold: f64,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub confusion: Confusion,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalReport {
    pub task: Task,
    pub metric: Metric,
    pub value: f64,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub precision: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub recall: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub confusion: Option<Confusion>,
    pub config: ReportConfig,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub sweep: Vec<SweepPoint>,
}

impl EvalReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Two aligned columns, followed by the sweep table when present.
    pub fn to_table(&self) -> String {
        let mut rows: Vec<(String, String)> = vec![
            ("task".into(), self.task.to_string()),
            ("metric".into(), self.metric.as_str().into()),
            ("value".into(), format!("{:.6}", self.value)),
            ("n".into(), self.n.to_string()),
        ];
        if let Some(p) = self.precision {
            rows.push(("precision".into(), format!("{p:.6}")));
        }
        if let Some(r) = self.recall {
            rows.push(("recall".into(), format!("{r:.6}")));
        }
        if let Some(c) = &self.confusion {
            rows.push(("tp/fp/fn/tn".into(), format!("{}/{}/{}/{}", c.tp, c.fp, c.fn_, c.tn)));
        }
        let cfg = &self.config;
        if let Some(v) = &cfg.variant_id {
            rows.push(("variant".into(), v.clone()));
        }
        rows.push(("scorer".into(), cfg.scorer.clone()));
        if let Some(s) = cfg.seed {
            rows.push(("seed".into(), s.to_string()));
        }
        if let Some(d) = cfg.distractors {
            rows.push(("distractors".into(), d.to_string()));
        }
        if let Some(d) = cfg.effective_distractors {
            rows.push(("effective distractors".into(), d.to_string()));
        }
        if let Some(p) = cfg.distractor_pool {
            rows.push(("distractor pool".into(), p.as_str().into()));
        }
        if let Some(t) = cfg.ties {
            rows.push(("ties".into(), format!("{t:?}").to_lowercase()));
        }
        if let Some(t) = cfg.threshold {
            rows.push(("threshold".into(), t.to_string()));
        }
        if let Some(z) = cfg.zero_division {
            rows.push(("0/0 taken as".into(), z.to_string()));
        }
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in rows {
            let _ = writeln!(out, "{k:<width$}  {v}");
        }
        if !self.sweep.is_empty() {
            let _ = writeln!(out, "\n{:>9}  {:>9}  {:>9}  {:>9}", "threshold", "precision", "recall", "f1");
            for p in &self.sweep {
                let _ = writeln!(out, "{:>9.4}  {:>9.6}  {:>9.6}  {:>9.6}", p.threshold, p.precision, p.recall, p.f1);
            }
        }
        out
    }
}
