//! Rename maps and their application.
//!
//! A rename map covers the distinct names of the selected categories in one
//! snippet. Replacements are either freshly generated (random strings or
//! `varN`/`funN`) or drawn from a corpus-wide pool of real names of the same
//! category. Maps are injective and never produce a keyword, a builtin or a
//! name that already appears in the snippet outside the map's domain.

mod pool;

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use indexmap::IndexMap;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use pool::{extract_pool, NamePool, PoolBuilder, PoolError, PoolSizes};

use crate::language::SourceLanguage;
use crate::lexer::{detokenize, tokenize, LexError, TokenKind, TokenStream};
use crate::names::{classify_names, NameCategory, NameInventory};

pub const DEFAULT_RANDOM_NAME_LENGTH: usize = 16;
const RANDOM_REDRAWS: usize = 64;
const SHUFFLE_DRAWS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    RandomGenerated,
    Shuffling,
}

impl Strategy {
    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::RandomGenerated => "random",
            Strategy::Shuffling => "shuffle",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "random" | "random-generated" | "rand" => Ok(Strategy::RandomGenerated),
            "shuffle" | "shuffling" | "shuff" => Ok(Strategy::Shuffling),
            _ => Err(format!("unknown strategy `{s}` (expected random or shuffle)")),
        }
    }
}

/// How the random-generated strategy spells its replacements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum NamingScheme {
    /// `[a-z][a-z0-9]{length-1}`, seeded.
    RandomString { length: usize },
    /// `var1..varN` for variables, `fun1..funN` for definitions and invocations.
    Sequential,
}

impl Default for NamingScheme {
    fn default() -> Self {
        NamingScheme::RandomString { length: DEFAULT_RANDOM_NAME_LENGTH }
    }
}

impl NamingScheme {
    pub fn as_str(&self) -> &'static str {
        match self {
            NamingScheme::RandomString { .. } => "random-string",
            NamingScheme::Sequential => "sequential",
        }
    }
}

/// A nonempty set of renameable categories.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct CategorySet(BTreeSet<NameCategory>);

impl CategorySet {
    pub fn new(categories: impl IntoIterator<Item = NameCategory>) -> Result<Self, AnonymizeError> {
        let set: BTreeSet<_> = categories.into_iter().collect();
        if set.is_empty() {
            return Err(AnonymizeError::InvalidConfig("at least one name category is required".into()));
        }
        if set.contains(&NameCategory::Preserved) {
            return Err(AnonymizeError::InvalidConfig("preserved names cannot be anonymized".into()));
        }
        Ok(CategorySet(set))
    }

    pub fn all() -> Self {
        CategorySet(NameCategory::RENAMEABLE.into_iter().collect())
    }

    pub fn only(category: NameCategory) -> Self {
        CategorySet::new([category]).expect("renameable category")
    }

    pub fn contains(&self, category: NameCategory) -> bool {
        self.0.contains(&category)
    }

    pub fn iter(&self) -> impl Iterator<Item = NameCategory> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for CategorySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<_> = self.0.iter().map(|c| c.short()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for CategorySet {
    type Err = AnonymizeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parsed = s
            .split(',')
            .filter(|p| !p.trim().is_empty())
            .map(|p| p.parse::<NameCategory>().map_err(AnonymizeError::InvalidConfig))
            .collect::<Result<Vec<_>, _>>()?;
        CategorySet::new(parsed)
    }
}

impl From<CategorySet> for String {
    fn from(set: CategorySet) -> String {
        set.to_string()
    }
}

impl TryFrom<String> for CategorySet {
    type Error = AnonymizeError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnonymizeConfig {
    pub categories: CategorySet,
    pub strategy: Strategy,
    pub scheme: NamingScheme,
    pub seed: u64,
}

impl AnonymizeConfig {
    pub fn new(categories: CategorySet, strategy: Strategy, scheme: NamingScheme, seed: u64) -> Self {
        AnonymizeConfig { categories, strategy, scheme, seed }
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        AnonymizeConfig { seed, ..self.clone() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnonymizeError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("shuffle pool exhausted: no collision-free {category} replacement for `{name}`")]
    PoolExhausted { category: NameCategory, name: String },
    #[error("inventory does not match token stream at token {token_index}")]
    InconsistentInventory { token_index: usize },
    #[error(transparent)]
    Lex(#[from] LexError),
}

/// Per-snippet injective mapping `(category, original) -> replacement`.
///
/// A name has exactly one symbol category within a snippet, so entries are
/// keyed by the original name.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RenameMap {
    entries: IndexMap<String, (NameCategory, String)>,
    pub seed: u64,
}

impl RenameMap {
    pub fn get(&self, category: NameCategory, name: &str) -> Option<&str> {
        self.entries
            .get(name)
            .filter(|(c, _)| *c == category)
            .map(|(_, r)| r.as_str())
    }

    /// Replacement for `name` whatever its category.
    pub fn replacement_for(&self, name: &str) -> Option<&str> {
        self.entries.get(name).map(|(_, r)| r.as_str())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in assignment order (first occurrence in the snippet).
    pub fn iter(&self) -> impl Iterator<Item = (NameCategory, &str, &str)> {
        self.entries.iter().map(|(n, (c, r))| (*c, n.as_str(), r.as_str()))
    }

    pub fn count(&self, category: NameCategory) -> usize {
        self.entries.values().filter(|(c, _)| *c == category).count()
    }

    pub fn insert(&mut self, category: NameCategory, name: impl Into<String>, replacement: impl Into<String>) {
        self.entries.insert(name.into(), (category, replacement.into()));
    }
}

/// Names a replacement may never take in this snippet.
fn forbidden_names<'a>(inventory: &'a NameInventory, domain: &HashSet<&str>) -> HashSet<&'a str> {
    let lang = inventory.language;
    inventory
        .identifier_texts()
        .into_iter()
        .filter(|n| !domain.contains(n))
        .chain(lang.keywords().iter().copied())
        .collect()
}

fn is_reserved(language: SourceLanguage, name: &str) -> bool {
    language.is_keyword(name) || language.is_standard_name(name)
}

pub fn build_rename_map(
    inventory: &NameInventory,
    config: &AnonymizeConfig,
    pool: Option<&NamePool>,
) -> Result<RenameMap, AnonymizeError> {
    let language = inventory.language;
    match (config.strategy, pool) {
        (Strategy::Shuffling, None) => {
            return Err(AnonymizeError::InvalidConfig("the shuffling strategy needs a name pool".into()))
        }
        (Strategy::RandomGenerated, Some(_)) => {
            return Err(AnonymizeError::InvalidConfig("a name pool is only used by the shuffling strategy".into()))
        }
        (_, Some(p)) if p.language() != language => {
            return Err(AnonymizeError::InvalidConfig(format!(
                "pool language {} does not match snippet language {}",
                p.language(),
                language
            )))
        }
        _ => {}
    }
    if let NamingScheme::RandomString { length } = config.scheme {
        if length == 0 {
            return Err(AnonymizeError::InvalidConfig("random name length must be at least 1".into()));
        }
    }

    let domain: Vec<(NameCategory, &str)> = inventory
        .symbols
        .iter()
        .filter(|(_, c)| config.categories.contains(**c))
        .map(|(n, c)| (*c, n.as_str()))
        .collect();
    let domain_names: HashSet<&str> = domain.iter().map(|(_, n)| *n).collect();
    let forbidden = forbidden_names(inventory, &domain_names);
    let mut used: HashSet<String> = HashSet::new();
    let mut map = RenameMap { entries: IndexMap::new(), seed: config.seed };
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let acceptable = |candidate: &str, used: &HashSet<String>| {
        !forbidden.contains(candidate) && !used.contains(candidate) && !is_reserved(language, candidate)
    };

    match (config.strategy, pool) {
        (Strategy::Shuffling, Some(pool)) => {
            for (category, name) in domain {
                let replacement = draw_from_pool(pool, category, name, &mut rng, |c| acceptable(c, &used))
                    .ok_or_else(|| AnonymizeError::PoolExhausted { category, name: name.to_string() })?;
                used.insert(replacement.clone());
                map.insert(category, name, replacement);
            }
        }
        _ => match config.scheme {
            NamingScheme::Sequential => {
                let (mut vars, mut funs) = (0usize, 0usize);
                for (category, name) in domain {
                    let (prefix, counter) = match category {
                        NameCategory::Variable => ("var", &mut vars),
                        _ => ("fun", &mut funs),
                    };
                    let replacement = loop {
                        *counter += 1;
                        let candidate = format!("{prefix}{counter}");
                        if acceptable(&candidate, &used) {
                            break candidate;
                        }
                    };
                    used.insert(replacement.clone());
                    map.insert(category, name, replacement);
                }
            }
            NamingScheme::RandomString { length } => {
                for (category, name) in domain {
                    let mut len = length;
                    let replacement = 'outer: loop {
                        for _ in 0..RANDOM_REDRAWS {
                            let candidate = random_name(&mut rng, len);
                            if acceptable(&candidate, &used) {
                                break 'outer candidate;
                            }
                        }
                        len += 1;
                    };
                    used.insert(replacement.clone());
                    map.insert(category, name, replacement);
                }
            }
        },
    }
    Ok(map)
}

const ALPHA: &[u8] = b"abcdefghijklmnopqrstuvwxyz";
const ALNUM: &[u8] = b"abcdefghijklmnopqrstuvwxyz0123456789";

fn random_name(rng: &mut impl Rng, length: usize) -> String {
    let mut s = String::with_capacity(length);
    s.push(ALPHA[rng.gen_range(0..ALPHA.len())] as char);
    for _ in 1..length {
        s.push(ALNUM[rng.gen_range(0..ALNUM.len())] as char);
    }
    s
}

fn draw_from_pool(
    pool: &NamePool,
    category: NameCategory,
    original: &str,
    rng: &mut impl Rng,
    acceptable: impl Fn(&str) -> bool,
) -> Option<String> {
    let names = pool.names(category);
    if names.is_empty() {
        return None;
    }
    let must_differ = names.len() >= 2;
    let ok = |c: &str| (!must_differ || c != original) && acceptable(c);

    if let Some(cycle) = pool.cycle(category) {
        if let Some(&start) = cycle.position.get(original) {
            let n = cycle.order.len();
            return (1..=n)
                .map(|step| &cycle.order[(start + step) % n])
                .find(|c| ok(c))
                .cloned();
        }
    }

    for _ in 0..SHUFFLE_DRAWS {
        let candidate = &names[rng.gen_range(0..names.len())];
        if ok(candidate) {
            return Some(candidate.clone());
        }
    }
    let start = rng.gen_range(0..names.len());
    (0..names.len())
        .map(|step| &names[(start + step) % names.len()])
        .find(|c| ok(c))
        .cloned()
}

/// Replace every renamed identifier occurrence; all other tokens are kept.
pub fn apply_renames(
    stream: &TokenStream,
    map: &RenameMap,
    inventory: &NameInventory,
) -> Result<TokenStream, AnonymizeError> {
    let identifier_count = stream.tokens.iter().filter(|t| t.kind == TokenKind::Identifier).count();
    if identifier_count != inventory.occurrences.len() {
        let token_index = inventory.occurrences.last().map_or(0, |o| o.token_index);
        return Err(AnonymizeError::InconsistentInventory { token_index });
    }
    let mut texts: Vec<(TokenKind, String)> =
        stream.tokens.iter().map(|t| (t.kind, t.text.clone())).collect();
    for occ in &inventory.occurrences {
        let consistent = stream
            .tokens
            .get(occ.token_index)
            .is_some_and(|t| t.kind == TokenKind::Identifier && t.text == occ.name);
        if !consistent {
            return Err(AnonymizeError::InconsistentInventory { token_index: occ.token_index });
        }
        if occ.category == NameCategory::Preserved {
            continue;
        }
        if let Some(replacement) = map.get(occ.category, &occ.name) {
            texts[occ.token_index].1 = replacement.to_string();
        }
    }
    Ok(TokenStream::from_tokens(stream.language, texts))
}

/// Result of anonymizing one snippet.
#[derive(Debug, Clone)]
pub struct Anonymized {
    pub stream: TokenStream,
    pub inventory: NameInventory,
    pub map: RenameMap,
    /// Number of identifier occurrences rewritten.
    pub renamed_occurrences: usize,
}

impl Anonymized {
    pub fn source(&self) -> &str {
        &self.stream.source
    }
}

/// tokenize → classify → build map → apply, keeping the intermediate pieces.
pub fn anonymize(
    source: &str,
    language: SourceLanguage,
    config: &AnonymizeConfig,
    pool: Option<&NamePool>,
) -> Result<Anonymized, AnonymizeError> {
    let stream = tokenize(source, language)?;
    let inventory = classify_names(&stream);
    let map = build_rename_map(&inventory, config, pool)?;
    let renamed = apply_renames(&stream, &map, &inventory)?;
    let renamed_occurrences = inventory
        .occurrences
        .iter()
        .filter(|o| o.category != NameCategory::Preserved && map.get(o.category, &o.name).is_some())
        .count();
    Ok(Anonymized { stream: renamed, inventory, map, renamed_occurrences })
}

pub fn anonymize_snippet(
    source: &str,
    language: SourceLanguage,
    config: &AnonymizeConfig,
    pool: Option<&NamePool>,
) -> Result<String, AnonymizeError> {
    anonymize(source, language, config, pool).map(|a| detokenize(&a.stream))
}
