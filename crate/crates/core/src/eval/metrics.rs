use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::EvalError;

/// Mean of `1 / rank` over all queries. Ranks are 1-based.
pub fn mrr(ranks: &[usize]) -> Result<f64, EvalError> {
    if ranks.is_empty() {
        return Err(EvalError::EmptyInput);
    }
    if ranks.contains(&0) {
        return Err(EvalError::InvalidRank);
    }
    let mut by_rank: BTreeMap<usize, usize> = BTreeMap::new();
    for &r in ranks {
        *by_rank.entry(r).or_default() += 1;
    }
    let sum: f64 = by_rank.iter().map(|(&r, &count)| count as f64 / r as f64).sum();
    Ok(sum / ranks.len() as f64)
}

/// How the gold item is placed among candidates with an equal score.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TieBreak {
    /// Gold ranked after every equal-scored distractor.
    #[default]
    Pessimistic,
    /// Gold ranked before every equal-scored distractor.
    Optimistic,
}

impl std::str::FromStr for TieBreak {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "pessimistic" => Ok(TieBreak::Pessimistic),
            "optimistic" => Ok(TieBreak::Optimistic),
            _ => Err(format!("unknown tie mode `{s}` (expected pessimistic or optimistic)")),
        }
    }
}

/// 1-based rank of a gold score among distractor scores.
pub fn rank_of(gold: f64, distractors: impl IntoIterator<Item = f64>, ties: TieBreak) -> usize {
    let ahead = distractors
        .into_iter()
        .filter(|&d| match ties {
            TieBreak::Pessimistic => d >= gold,
            TieBreak::Optimistic => d > gold,
        })
        .count();
    ahead + 1
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Confusion {
    pub tp: usize,
    pub fp: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
    pub tn: usize,
}

impl Confusion {
    pub fn from_predictions(predicted: &[bool], labels: &[bool]) -> Self {
        let mut c = Confusion::default();
        for (&p, &l) in predicted.iter().zip(labels) {
            match (p, l) {
                (true, true) => c.tp += 1,
                (true, false) => c.fp += 1,
                (false, true) => c.fn_ += 1,
                (false, false) => c.tn += 1,
            }
        }
        c
    }

    pub fn scores(&self) -> F1Scores {
        f1(self.tp, self.fp, self.fn_)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct F1Scores {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

/// Precision, recall and their harmonic mean; every 0/0 is taken as 0.
pub fn f1(tp: usize, fp: usize, fn_: usize) -> F1Scores {
    let precision = ratio(tp, tp + fp);
    let recall = ratio(tp, tp + fn_);
    let f1 = if precision + recall == 0.0 { 0.0 } else { 2.0 * precision * recall / (precision + recall) };
    F1Scores { precision, recall, f1 }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mrr_examples() {
        assert_eq!(mrr(&[1, 1, 1]).unwrap(), 1.0);
        assert!((mrr(&[1, 2, 4]).unwrap() - 1.75 / 3.0).abs() < 1e-15);
        assert_eq!(mrr(&[1000]).unwrap(), 0.001);
        assert!(matches!(mrr(&[]), Err(EvalError::EmptyInput)));
        assert!(matches!(mrr(&[0]), Err(EvalError::InvalidRank)));
    }

    #[test]
    fn f1_examples() {
        assert_eq!(f1(5, 0, 0), F1Scores { precision: 1.0, recall: 1.0, f1: 1.0 });
        let s = f1(2, 1, 1);
        for v in [s.precision, s.recall, s.f1] {
            assert!((v - 2.0 / 3.0).abs() < 1e-15);
        }
        assert_eq!(f1(0, 0, 3), F1Scores { precision: 0.0, recall: 0.0, f1: 0.0 });
        assert_eq!(f1(0, 0, 0).f1, 0.0);
    }

    #[test]
    fn ties() {
        assert_eq!(rank_of(0.5, [0.5, 0.5, 0.1], TieBreak::Pessimistic), 3);
        assert_eq!(rank_of(0.5, [0.5, 0.5, 0.1], TieBreak::Optimistic), 1);
        assert_eq!(rank_of(0.0, std::iter::repeat_n(0.0, 999), TieBreak::Pessimistic), 1000);
    }

    #[test]
    fn confusion_counts() {
        let c = Confusion::from_predictions(&[true, true, false, false], &[true, false, true, false]);
        assert_eq!(c, Confusion { tp: 1, fp: 1, fn_: 1, tn: 1 });
    }
}
