use std::collections::HashMap;

use super::{Document, EvalError, Scorer};

/// Lowercased sub-tokens of `token`: split on every non-alphanumeric
/// character and on case boundaries (`parseHTTPHeader` → parse, http, header).
pub fn sub_tokens(token: &str) -> Vec<String> {
    let mut out = Vec::new();
    for word in token.split(|c: char| !c.is_alphanumeric()).filter(|w| !w.is_empty()) {
        let chars: Vec<char> = word.chars().collect();
        let mut start = 0;
        for i in 1..chars.len() {
            let (prev, cur) = (chars[i - 1], chars[i]);
            let next_lower = chars.get(i + 1).is_some_and(|c| c.is_lowercase());
            let boundary = (prev.is_lowercase() || prev.is_numeric()) && cur.is_uppercase()
                || prev.is_uppercase() && cur.is_uppercase() && next_lower;
            if boundary {
                out.push(chars[start..i].iter().collect::<String>().to_lowercase());
                start = i;
            }
        }
        out.push(chars[start..].iter().collect::<String>().to_lowercase());
    }
    out
}

/// Term-frequency vector over the sub-tokens of a token list.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TermVector {
    counts: HashMap<String, u64>,
    norm_sq: u64,
}

impl TermVector {
    pub fn new<S: AsRef<str>>(tokens: &[S]) -> Self {
        let mut counts: HashMap<String, u64> = HashMap::new();
        for token in tokens {
            for sub in sub_tokens(token.as_ref()) {
                *counts.entry(sub).or_default() += 1;
            }
        }
        let norm_sq = counts.values().map(|c| c * c).sum();
        TermVector { counts, norm_sq }
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn cosine(&self, other: &TermVector) -> f64 {
        match (self.is_empty(), other.is_empty()) {
            (true, true) => return 1.0,
            (true, false) | (false, true) => return 0.0,
            _ => {}
        }
        let (small, large) = if self.counts.len() <= other.counts.len() { (self, other) } else { (other, self) };
        let dot: u64 = small.counts.iter().filter_map(|(t, c)| large.counts.get(t).map(|d| c * d)).sum();
        if dot == 0 {
            return 0.0;
        }
        let denom = ((self.norm_sq as f64) * (other.norm_sq as f64)).sqrt();
        (dot as f64 / denom).min(1.0)
    }
}

/// Cosine similarity of the term-frequency vectors of two token lists.
/// Both empty gives 1, exactly one empty gives 0.
pub fn lexical_score<A: AsRef<str>, B: AsRef<str>>(a: &[A], b: &[B]) -> f64 {
    TermVector::new(a).cosine(&TermVector::new(b))
}

/// Token-overlap baseline standing in for a model that reads names.
#[derive(Debug, Clone, Copy, Default)]
pub struct LexicalScorer;

impl Scorer for LexicalScorer {
    type Prepared = TermVector;

    fn name(&self) -> String {
        "lexical".into()
    }

    fn prepare(&self, doc: Document<'_>) -> TermVector {
        TermVector::new(doc.tokens)
    }

    fn score(&self, query: &TermVector, candidate: &TermVector) -> Result<f64, EvalError> {
        Ok(query.cosine(candidate))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitting() {
        assert_eq!(sub_tokens("bubble_sort"), ["bubble", "sort"]);
        assert_eq!(sub_tokens("parseHTTPHeader"), ["parse", "http", "header"]);
        assert_eq!(sub_tokens("it_end"), ["it", "end"]);
        assert_eq!(sub_tokens("var12"), ["var12"]);
        assert_eq!(sub_tokens("toUTF8String"), ["to", "utf8", "string"]);
        assert!(sub_tokens("(").is_empty());
        assert_eq!(sub_tokens("__init__"), ["init"]);
    }

    #[test]
    fn identical_and_disjoint() {
        let a = ["def", "bubbleSort", "(", "arr", ")"];
        assert_eq!(lexical_score(&a, &a), 1.0);
        assert_eq!(lexical_score(&["alpha"], &["beta"]), 0.0);
    }

    #[test]
    fn hand_computed_cosine() {
        let s = lexical_score(&["bubble", "sort"], &["bubble", "sort", "fast"]);
        assert!((s - 2.0 / 6f64.sqrt()).abs() < 1e-15);
        assert!((s - 0.8165).abs() < 1e-4);
    }

    #[test]
    fn empty_conventions() {
        let empty: [&str; 0] = [];
        assert_eq!(lexical_score(&empty, &empty), 1.0);
        assert_eq!(lexical_score(&empty, &["x"]), 0.0);
        assert_eq!(lexical_score(&["x"], &empty), 0.0);
    }

    #[test]
    fn symmetric() {
        let a = ["getName", "name", "x"];
        let b = ["set_name", "value"];
        assert_eq!(lexical_score(&a, &b), lexical_score(&b, &a));
    }
}
