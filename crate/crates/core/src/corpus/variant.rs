use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::CorpusError;
use crate::anonymize::{AnonymizeConfig, CategorySet, NamingScheme, Strategy};
use crate::language::SourceLanguage;
use crate::names::NameCategory;

pub const VARIANT_COUNT: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    CodeSearch,
    CloneDetection,
}

impl Task {
    pub fn as_str(self) -> &'static str {
        match self {
            Task::CodeSearch => "code-search",
            Task::CloneDetection => "clone-detection",
        }
    }

    pub fn languages(self) -> BTreeSet<SourceLanguage> {
        match self {
            Task::CodeSearch => SourceLanguage::ALL.into_iter().collect(),
            Task::CloneDetection => [SourceLanguage::Java].into_iter().collect(),
        }
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Task {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "code-search" | "codesearch" => Ok(Task::CodeSearch),
            "clone" | "clone-detection" => Ok(Task::CloneDetection),
            _ => Err(format!("unknown task `{s}` (expected code-search or clone)")),
        }
    }
}

/// One anonymized variant: task × category set × strategy, plus naming
/// scheme and seed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariantConfig {
    pub variant_id: Option<String>,
    pub task: Task,
    pub languages: BTreeSet<SourceLanguage>,
    pub categories: CategorySet,
    pub strategy: Strategy,
    pub scheme: NamingScheme,
    pub seed: u64,
}

const CATEGORY_ROWS: [&[NameCategory]; 4] = [
    &[NameCategory::Variable],
    &[NameCategory::Definition],
    &[NameCategory::Invocation],
    &NameCategory::RENAMEABLE,
];
const STRATEGY_ROWS: [Strategy; 2] = [Strategy::RandomGenerated, Strategy::Shuffling];

impl VariantConfig {
    /// Expand a canonical tag `d1`..`d16` (case-insensitive).
    pub fn from_tag(tag: &str) -> Result<Self, CorpusError> {
        let bad = || CorpusError::InvalidConfig(format!("unknown variant `{tag}` (expected d1..d16)"));
        let digits = tag.strip_prefix(['d', 'D']).ok_or_else(bad)?;
        if digits.starts_with('0') || digits.starts_with('+') {
            return Err(bad());
        }
        let k: usize = digits.parse().map_err(|_| bad())?;
        if !(1..=VARIANT_COUNT).contains(&k) {
            return Err(bad());
        }
        let i = k - 1;
        let task = if i < 8 { Task::CodeSearch } else { Task::CloneDetection };
        let categories = CategorySet::new(CATEGORY_ROWS[(i % 8) / 2].iter().copied()).expect("nonempty");
        Ok(VariantConfig {
            variant_id: Some(format!("d{k}")),
            task,
            languages: task.languages(),
            categories,
            strategy: STRATEGY_ROWS[i % 2],
            scheme: NamingScheme::default(),
            seed: 0,
        })
    }

    pub fn all_tags() -> impl Iterator<Item = String> {
        (1..=VARIANT_COUNT).map(|k| format!("d{k}"))
    }

    /// A custom variant that is not bound to a tag.
    pub fn custom(task: Task, categories: CategorySet, strategy: Strategy, scheme: NamingScheme, seed: u64) -> Self {
        VariantConfig { variant_id: None, task, languages: task.languages(), categories, strategy, scheme, seed }
    }

    /// The tag whose row matches this task, category set and strategy.
    pub fn canonical_tag(&self) -> Option<String> {
        let row = CATEGORY_ROWS
            .iter()
            .position(|cats| cats.len() == self.categories.len() && cats.iter().all(|c| self.categories.contains(*c)))?;
        let col = STRATEGY_ROWS.iter().position(|s| *s == self.strategy)?;
        let base = match self.task {
            Task::CodeSearch => 0,
            Task::CloneDetection => 8,
        };
        (self.languages == self.task.languages()).then(|| format!("d{}", base + row * 2 + col + 1))
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_scheme(mut self, scheme: NamingScheme) -> Self {
        self.scheme = scheme;
        self
    }

    pub fn anonymize_config(&self) -> AnonymizeConfig {
        AnonymizeConfig::new(self.categories.clone(), self.strategy, self.scheme, self.seed)
    }

    pub fn label(&self) -> String {
        self.variant_id.clone().unwrap_or_else(|| format!("{}/{}/{}", self.task, self.categories, self.strategy))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_and_last_rows() {
        let d1 = VariantConfig::from_tag("d1").unwrap();
        assert_eq!(d1.task, Task::CodeSearch);
        assert_eq!(d1.categories, CategorySet::only(NameCategory::Variable));
        assert_eq!(d1.strategy, Strategy::RandomGenerated);
        let d8 = VariantConfig::from_tag("D8").unwrap();
        assert_eq!(d8.categories, CategorySet::all());
        assert_eq!(d8.strategy, Strategy::Shuffling);
        let d16 = VariantConfig::from_tag("d16").unwrap();
        assert_eq!(d16.task, Task::CloneDetection);
        assert_eq!(d16.languages.len(), 1);
    }

    #[test]
    fn tags_round_trip() {
        for tag in VariantConfig::all_tags() {
            let config = VariantConfig::from_tag(&tag).unwrap();
            assert_eq!(config.canonical_tag().as_deref(), Some(tag.as_str()));
        }
    }

    #[test]
    fn rejects_unknown_tags() {
        for tag in ["d0", "d17", "x1", "d", "d01", "d+1", ""] {
            assert!(VariantConfig::from_tag(tag).is_err(), "{tag}");
        }
    }

    #[test]
    fn two_category_set_has_no_tag() {
        let cats = CategorySet::new([NameCategory::Variable, NameCategory::Definition]).unwrap();
        let config = VariantConfig::custom(Task::CodeSearch, cats, Strategy::Shuffling, NamingScheme::Sequential, 1);
        assert_eq!(config.canonical_tag(), None);
    }
}
