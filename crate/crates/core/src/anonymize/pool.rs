use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::language::SourceLanguage;
use crate::lexer::{tokenize, LexError};
use crate::names::{classify_names, NameCategory, NameInventory};

/// Corpus-wide distinct names per renameable category, the source of
/// replacements for the shuffling strategy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamePool {
    language: SourceLanguage,
    names: BTreeMap<NameCategory, Vec<String>>,
    cycles: Option<BTreeMap<NameCategory, NameCycle>>,
}

/// A seeded cyclic order over one category's pool; each name maps to its
/// successor, which is a derangement whenever the pool has two or more names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct NameCycle {
    pub(crate) order: Vec<String>,
    pub(crate) position: HashMap<String, usize>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct PoolSizes {
    pub variable: usize,
    pub definition: usize,
    pub invocation: usize,
}

impl NamePool {
    pub fn language(&self) -> SourceLanguage {
        self.language
    }

    /// Sorted distinct names collected for `category`.
    pub fn names(&self, category: NameCategory) -> &[String] {
        self.names.get(&category).map_or(&[], Vec::as_slice)
    }

    pub fn contains(&self, category: NameCategory, name: &str) -> bool {
        self.names(category).binary_search_by(|n| n.as_str().cmp(name)).is_ok()
    }

    pub fn sizes(&self) -> PoolSizes {
        PoolSizes {
            variable: self.names(NameCategory::Variable).len(),
            definition: self.names(NameCategory::Definition).len(),
            invocation: self.names(NameCategory::Invocation).len(),
        }
    }

    /// Fix one corpus-wide permutation per category instead of drawing
    /// independently for every snippet.
    pub fn with_global_permutation(mut self, seed: u64) -> Self {
        let cycles = self
            .names
            .iter()
            .map(|(category, names)| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (*category as u64).wrapping_mul(0x9e37_79b9));
                let mut order = names.clone();
                order.shuffle(&mut rng);
                let position = order.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
                (*category, NameCycle { order, position })
            })
            .collect();
        self.cycles = Some(cycles);
        self
    }

    pub fn is_global_permutation(&self) -> bool {
        self.cycles.is_some()
    }

    pub(crate) fn cycle(&self, category: NameCategory) -> Option<&NameCycle> {
        self.cycles.as_ref().and_then(|c| c.get(&category))
    }
}

/// Accumulates inventories into a pool.
#[derive(Debug, Clone)]
pub struct PoolBuilder {
    language: SourceLanguage,
    names: BTreeMap<NameCategory, BTreeSet<String>>,
}

impl PoolBuilder {
    pub fn new(language: SourceLanguage) -> Self {
        PoolBuilder { language, names: BTreeMap::new() }
    }

    pub fn add(&mut self, inventory: &NameInventory) {
        for (name, category) in &inventory.symbols {
            self.names.entry(*category).or_default().insert(name.clone());
        }
    }

    pub fn add_source(&mut self, source: &str) -> Result<(), LexError> {
        let stream = tokenize(source, self.language)?;
        self.add(&classify_names(&stream));
        Ok(())
    }

    pub fn merge(mut self, other: PoolBuilder) -> Self {
        for (category, names) in other.names {
            self.names.entry(category).or_default().extend(names);
        }
        self
    }

    pub fn build(self) -> NamePool {
        let names = NameCategory::RENAMEABLE
            .iter()
            .map(|c| (*c, self.names.get(c).map(|s| s.iter().cloned().collect()).unwrap_or_default()))
            .collect();
        NamePool { language: self.language, names, cycles: None }
    }
}

/// Lex error tagged with the position of the offending snippet.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("snippet {index}: {source}")]
pub struct PoolError {
    pub index: usize,
    #[source]
    pub source: LexError,
}

/// Collect the per-category pools of a corpus of snippets.
pub fn extract_pool<'a, I>(snippets: I, language: SourceLanguage) -> Result<NamePool, PoolError>
where
    I: IntoIterator<Item = &'a str>,
{
    let mut builder = PoolBuilder::new(language);
    for (index, source) in snippets.into_iter().enumerate() {
        builder.add_source(source).map_err(|source| PoolError { index, source })?;
    }
    Ok(builder.build())
}
