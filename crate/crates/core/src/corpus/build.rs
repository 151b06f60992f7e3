use std::collections::{BTreeMap, HashMap, HashSet};
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use indexmap::IndexMap;
use rayon::prelude::*;
use serde::Serialize;

use super::clone::{read_clone_functions, read_clone_pairs, CloneFunctionRecord};
use super::codesearch::{read_code_search_corpus, CodeSearchRecord};
use super::variant::{Task, VariantConfig};
use super::{CorpusError, ReadMode, RecordIssue};
use crate::anonymize::{anonymize, AnonymizeConfig, AnonymizeError, NamePool, PoolBuilder, PoolSizes, RenameMap, Strategy};
use crate::language::SourceLanguage;
use crate::lexer::{tokenize, TokenKind, TokenStream};
use crate::names::{classify_names, NameCategory};
use crate::seed::derive_seed;

const DEFAULT_CHUNK: usize = 2048;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuildOptions {
    pub mode: ReadMode,
    /// Drop the leading docstring / Javadoc of each snippet before renaming.
    pub strip_docstring: bool,
    /// Use one fixed permutation per pool instead of per-snippet draws.
    pub global_permutation: bool,
    /// Records handed to the worker pool at a time.
    pub chunk_size: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { mode: ReadMode::Strict, strip_docstring: false, global_permutation: false, chunk_size: DEFAULT_CHUNK }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct CategoryCounts {
    pub variable: usize,
    pub definition: usize,
    pub invocation: usize,
}

impl CategoryCounts {
    pub fn total(&self) -> usize {
        self.variable + self.definition + self.invocation
    }

    fn from_map(map: &RenameMap) -> Self {
        CategoryCounts {
            variable: map.count(NameCategory::Variable),
            definition: map.count(NameCategory::Definition),
            invocation: map.count(NameCategory::Invocation),
        }
    }

    fn add(&mut self, other: &CategoryCounts) {
        self.variable += other.variable;
        self.definition += other.definition;
        self.invocation += other.invocation;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairFileStats {
    pub pairs: usize,
    pub positives: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BuildReport {
    pub variant_id: Option<String>,
    pub task: Task,
    pub categories: String,
    pub strategy: Strategy,
    pub scheme: &'static str,
    pub seed: u64,
    pub records_in: usize,
    pub records_out: usize,
    /// Distinct names renamed, summed over records.
    pub renames: CategoryCounts,
    pub renamed_occurrences: usize,
    pub errors: Vec<RecordIssue>,
    pub pool_sizes: BTreeMap<SourceLanguage, PoolSizes>,
    /// Records whose `code_tokens` substitution count differs from the
    /// number of identifier occurrences renamed in `code`.
    pub code_token_divergences: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub functions: Option<usize>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub pairs: BTreeMap<String, PairFileStats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dangling_pairs: Option<usize>,
}

impl BuildReport {
    fn new(config: &VariantConfig) -> Self {
        BuildReport {
            variant_id: config.variant_id.clone(),
            task: config.task,
            categories: config.categories.to_string(),
            strategy: config.strategy,
            scheme: config.scheme.as_str(),
            seed: config.seed,
            records_in: 0,
            records_out: 0,
            renames: CategoryCounts::default(),
            renamed_occurrences: 0,
            errors: Vec::new(),
            pool_sizes: BTreeMap::new(),
            code_token_divergences: 0,
            functions: None,
            pairs: BTreeMap::new(),
            dangling_pairs: None,
        }
    }
}

/// Replace each element equal to a renamed name by its replacement.
pub fn rewrite_code_tokens(code_tokens: &[String], map: &RenameMap) -> Vec<String> {
    rewrite_counting(code_tokens, map).0
}

fn rewrite_counting(code_tokens: &[String], map: &RenameMap) -> (Vec<String>, usize) {
    let mut replaced = 0;
    let out = code_tokens
        .iter()
        .map(|t| match map.replacement_for(t) {
            Some(r) => {
                replaced += 1;
                r.to_string()
            }
            None => t.clone(),
        })
        .collect();
    (out, replaced)
}

/// Remove the docstring of the first Python function or class, or the
/// Javadoc comments before a Java declaration. Other text is untouched.
pub fn strip_docstring(code: &str, language: SourceLanguage) -> Result<String, AnonymizeError> {
    let stream = tokenize(code, language)?;
    let mut tokens: Vec<(TokenKind, String)> = stream.tokens.iter().map(|t| (t.kind, t.text.clone())).collect();
    match language {
        SourceLanguage::Python => strip_python_docstring(&stream, &mut tokens),
        SourceLanguage::Java => strip_javadoc(&mut tokens),
    }
    Ok(TokenStream::from_tokens(language, tokens).source)
}

fn next_significant(tokens: &[(TokenKind, String)], from: usize) -> Option<usize> {
    (from..tokens.len()).find(|&i| !tokens[i].0.is_trivia())
}

fn strip_python_docstring(stream: &TokenStream, tokens: &mut Vec<(TokenKind, String)>) {
    let Some(header) = tokens.iter().position(|(k, t)| *k == TokenKind::Keyword && (t == "def" || t == "class")) else {
        return;
    };
    let mut depth = 0i32;
    let mut colon = None;
    for (i, (kind, text)) in tokens.iter().enumerate().skip(header + 1) {
        if *kind != TokenKind::Punctuation {
            continue;
        }
        match text.as_str() {
            "(" | "[" | "{" => depth += 1,
            ")" | "]" | "}" => depth -= 1,
            ":" if depth == 0 => {
                colon = Some(i);
                break;
            }
            _ => {}
        }
    }
    let Some(colon) = colon else { return };
    let Some(doc) = next_significant(tokens, colon + 1) else { return };
    if tokens[doc].0 != TokenKind::StringLiteral {
        return;
    }
    let follow = next_significant(tokens, doc + 1);
    let ends_statement = tokens[doc + 1..follow.unwrap_or(tokens.len())]
        .iter()
        .any(|(k, t)| *k == TokenKind::Layout && t.contains('\n'))
        || follow.is_none();
    if !ends_statement {
        return;
    }
    if tokens[colon + 1..doc].iter().all(|(_, t)| !t.contains('\n')) {
        tokens[doc] = (TokenKind::Keyword, "pass".into());
        return;
    }
    let column = |i: usize| {
        let start = stream.tokens[i].span.start;
        start - stream.source[..start].rfind('\n').map_or(0, |p| p + 1)
    };
    match follow {
        Some(next) if column(next) >= column(doc) => {
            let end = if tokens[doc + 1].0 == TokenKind::Layout { doc + 2 } else { doc + 1 };
            tokens.drain(doc..end);
        }
        _ => tokens[doc] = (TokenKind::Keyword, "pass".into()),
    }
}

fn strip_javadoc(tokens: &mut Vec<(TokenKind, String)>) {
    let mut i = 0;
    while i < tokens.len() && tokens[i].0.is_trivia() {
        if tokens[i].0 == TokenKind::Comment && tokens[i].1.starts_with("/**") {
            let end = if tokens.get(i + 1).is_some_and(|t| t.0 == TokenKind::Layout) { i + 2 } else { i + 1 };
            tokens.drain(i..end);
        } else {
            i += 1;
        }
    }
}

struct Rewritten {
    code: String,
    map: RenameMap,
    renamed_occurrences: usize,
}

fn rewrite_snippet(
    code: &str,
    language: SourceLanguage,
    config: &AnonymizeConfig,
    pool: Option<&NamePool>,
    strip: bool,
) -> Result<Rewritten, AnonymizeError> {
    let stripped;
    let source = if strip {
        stripped = strip_docstring(code, language)?;
        stripped.as_str()
    } else {
        code
    };
    let out = anonymize(source, language, config, pool)?;
    Ok(Rewritten { code: out.stream.source, map: out.map, renamed_occurrences: out.renamed_occurrences })
}

fn check_config(config: &VariantConfig, task: Task) -> Result<(), CorpusError> {
    if config.task != task {
        return Err(CorpusError::InvalidConfig(format!("variant {} is a {} variant", config.label(), config.task)));
    }
    if config.languages.is_empty() {
        return Err(CorpusError::InvalidConfig("no languages selected".into()));
    }
    Ok(())
}

fn pool_for(builder: PoolBuilder, config: &VariantConfig, options: &BuildOptions, language: SourceLanguage) -> NamePool {
    let pool = builder.build();
    if options.global_permutation {
        pool.with_global_permutation(derive_seed(config.seed, &format!("pool:{language}")))
    } else {
        pool
    }
}

fn pool_builder_for(sources: &[(SourceLanguage, String)], language: SourceLanguage) -> PoolBuilder {
    sources
        .par_iter()
        .filter(|(l, _)| *l == language)
        .fold(
            || PoolBuilder::new(language),
            |mut b, (_, code)| {
                if let Ok(stream) = tokenize(code, language) {
                    b.add(&classify_names(&stream));
                }
                b
            },
        )
        .reduce(|| PoolBuilder::new(language), PoolBuilder::merge)
}

fn maybe_strip(code: &str, language: SourceLanguage, strip: bool) -> String {
    if strip {
        strip_docstring(code, language).unwrap_or_else(|_| code.to_string())
    } else {
        code.to_string()
    }
}

fn code_search_pools(
    input: &Path,
    config: &VariantConfig,
    options: &BuildOptions,
) -> Result<HashMap<SourceLanguage, NamePool>, CorpusError> {
    let mut builders: HashMap<SourceLanguage, PoolBuilder> =
        config.languages.iter().map(|l| (*l, PoolBuilder::new(*l))).collect();
    let mut reader = read_code_search_corpus(input, options.mode)?;
    loop {
        let chunk: Vec<(SourceLanguage, String)> = reader
            .by_ref()
            .take(options.chunk_size.max(1))
            .map(|r| r.map(|r| (r.language, maybe_strip(&r.code, r.language, options.strip_docstring))))
            .collect::<Result<_, _>>()?;
        if chunk.is_empty() {
            break;
        }
        for language in &config.languages {
            let part = pool_builder_for(&chunk, *language);
            let b = builders.remove(language).expect("builder per language");
            builders.insert(*language, b.merge(part));
        }
    }
    Ok(builders.into_iter().map(|(l, b)| (l, pool_for(b, config, options, l))).collect())
}

enum Outcome<T> {
    Done { record: T, counts: CategoryCounts, renamed: usize, divergent: bool },
    Failed(CorpusError),
}

fn code_search_record(
    mut record: CodeSearchRecord,
    config: &VariantConfig,
    pools: &HashMap<SourceLanguage, NamePool>,
    options: &BuildOptions,
) -> Outcome<CodeSearchRecord> {
    let key = record.key();
    if !config.languages.contains(&record.language) {
        return Outcome::Failed(CorpusError::LanguageMismatch { record: key, found: record.language });
    }
    let cfg = config.anonymize_config().with_seed(derive_seed(config.seed, &key));
    let pool = pools.get(&record.language);
    match rewrite_snippet(&record.code, record.language, &cfg, pool, options.strip_docstring) {
        Ok(out) => {
            let (tokens, replaced) = rewrite_counting(&record.code_tokens, &out.map);
            let counts = CategoryCounts::from_map(&out.map);
            let divergent = replaced != out.renamed_occurrences;
            if out.code != record.code {
                record.set_code(out.code);
            }
            if replaced > 0 {
                record.set_code_tokens(tokens);
            }
            Outcome::Done { record, counts, renamed: out.renamed_occurrences, divergent }
        }
        Err(source) => Outcome::Failed(CorpusError::Record { record: key, source }),
    }
}

fn tally<T>(
    outcome: Outcome<T>,
    line: Option<usize>,
    report: &mut BuildReport,
    mode: ReadMode,
) -> Result<Option<T>, CorpusError> {
    match outcome {
        Outcome::Done { record, counts, renamed, divergent } => {
            report.renames.add(&counts);
            report.renamed_occurrences += renamed;
            report.code_token_divergences += usize::from(divergent);
            report.records_out += 1;
            Ok(Some(record))
        }
        Outcome::Failed(err) if mode == ReadMode::Lenient => {
            let record = match &err {
                CorpusError::Record { record, .. } | CorpusError::LanguageMismatch { record, .. } => Some(record.clone()),
                _ => None,
            };
            report.errors.push(RecordIssue { line, record, reason: err.to_string() });
            Ok(None)
        }
        Outcome::Failed(err) => Err(err),
    }
}

/// Anonymize a code-search JSONL corpus into `output`, one record per input
/// record and in input order. Only `code` and `code_tokens` change.
pub fn build_code_search_variant(
    input: &Path,
    output: &Path,
    config: &VariantConfig,
    options: &BuildOptions,
) -> Result<BuildReport, CorpusError> {
    check_config(config, Task::CodeSearch)?;
    let mut report = BuildReport::new(config);
    let pools = if config.strategy == Strategy::Shuffling {
        let pools = code_search_pools(input, config, options)?;
        report.pool_sizes = pools.iter().map(|(l, p)| (*l, p.sizes())).collect();
        pools
    } else {
        HashMap::new()
    };

    let mut reader = read_code_search_corpus(input, options.mode)?;
    let file = File::create(output).map_err(|e| CorpusError::io(output, e))?;
    let mut out = BufWriter::new(file);
    loop {
        let chunk: Vec<CodeSearchRecord> =
            reader.by_ref().take(options.chunk_size.max(1)).collect::<Result<_, _>>()?;
        if chunk.is_empty() {
            break;
        }
        report.records_in += chunk.len();
        let lines: Vec<usize> = chunk.iter().map(|r| r.line).collect();
        let outcomes: Vec<_> =
            chunk.into_par_iter().map(|r| code_search_record(r, config, &pools, options)).collect();
        for (outcome, line) in outcomes.into_iter().zip(lines) {
            if let Some(record) = tally(outcome, Some(line), &mut report, options.mode)? {
                writeln!(out, "{}", record.to_json_line()).map_err(|e| CorpusError::io(output, e))?;
            }
        }
    }
    for issue in reader.issues() {
        report.errors.push(issue.clone());
        report.records_in += 1;
    }
    report.errors.sort_by_key(|i| i.line);
    out.flush().map_err(|e| CorpusError::io(output, e))?;
    Ok(report)
}

/// Anonymize the clone functions file into `functions_out` and copy each pair
/// file unchanged next to it.
pub fn build_clone_variant(
    functions_in: &Path,
    pair_files: &[PathBuf],
    functions_out: &Path,
    config: &VariantConfig,
    options: &BuildOptions,
) -> Result<BuildReport, CorpusError> {
    check_config(config, Task::CloneDetection)?;
    let language = SourceLanguage::Java;
    let mut report = BuildReport::new(config);
    let (functions, issues) = read_clone_functions(functions_in, options.mode)?;
    report.records_in = functions.len() + issues.len();
    report.errors.extend(issues);

    let mut seen = HashSet::with_capacity(functions.len());
    for f in &functions {
        if !seen.insert(f.idx.as_str()) {
            return Err(CorpusError::DuplicateIndex(f.idx.clone()));
        }
    }
    let mut pairs = Vec::with_capacity(pair_files.len());
    for path in pair_files {
        let records = read_clone_pairs(path)?;
        if options.mode == ReadMode::Strict {
            if let Some(idx) =
                records.iter().flat_map(|p| [&p.idx1, &p.idx2]).find(|idx| !seen.contains(idx.as_str()))
            {
                return Err(CorpusError::DanglingIndex(idx.clone()));
            }
        }
        pairs.push((path, records));
    }

    let pool = (config.strategy == Strategy::Shuffling).then(|| {
        let sources: Vec<_> =
            functions.iter().map(|f| (language, maybe_strip(&f.func, language, options.strip_docstring))).collect();
        pool_for(pool_builder_for(&sources, language), config, options, language)
    });
    if let Some(pool) = &pool {
        report.pool_sizes.insert(language, pool.sizes());
    }

    let lines: Vec<usize> = functions.iter().map(|f| f.line).collect();
    let outcomes: Vec<Outcome<CloneFunctionRecord>> = functions
        .into_par_iter()
        .map(|mut f| {
            let key = format!("idx:{}", f.idx);
            let cfg = config.anonymize_config().with_seed(derive_seed(config.seed, &key));
            match rewrite_snippet(&f.func, language, &cfg, pool.as_ref(), options.strip_docstring) {
                Ok(out) => {
                    if out.code != f.func {
                        f.set_func(out.code);
                    }
                    Outcome::Done {
                        record: f,
                        counts: CategoryCounts::from_map(&out.map),
                        renamed: out.renamed_occurrences,
                        divergent: false,
                    }
                }
                Err(source) => Outcome::Failed(CorpusError::Record { record: key, source }),
            }
        })
        .collect();

    let file = File::create(functions_out).map_err(|e| CorpusError::io(functions_out, e))?;
    let mut out = BufWriter::new(file);
    let mut written = HashSet::new();
    for (outcome, line) in outcomes.into_iter().zip(lines) {
        if let Some(f) = tally(outcome, Some(line), &mut report, options.mode)? {
            writeln!(out, "{}", f.to_json_line()).map_err(|e| CorpusError::io(functions_out, e))?;
            written.insert(f.idx);
        }
    }
    out.flush().map_err(|e| CorpusError::io(functions_out, e))?;
    report.errors.sort_by_key(|i| i.line);
    report.functions = Some(report.records_out);

    let out_dir = functions_out.parent().unwrap_or(Path::new("."));
    let mut dangling = 0;
    let mut names = IndexMap::new();
    for (path, records) in pairs {
        let name = path
            .file_name()
            .ok_or_else(|| CorpusError::InvalidConfig(format!("pair file {} has no file name", path.display())))?;
        if names.insert(name.to_owned(), ()).is_some() {
            return Err(CorpusError::InvalidConfig(format!(
                "two pair files share the name {}",
                Path::new(name).display()
            )));
        }
        let dest = out_dir.join(name);
        let same = fs::canonicalize(&dest).ok().zip(fs::canonicalize(path).ok()).is_some_and(|(a, b)| a == b);
        if !same {
            fs::copy(path, &dest).map_err(|e| CorpusError::io(&dest, e))?;
        }
        dangling += records
            .iter()
            .filter(|p| !written.contains(&p.idx1) || !written.contains(&p.idx2))
            .count();
        report.pairs.insert(
            name.to_string_lossy().into_owned(),
            PairFileStats { pairs: records.len(), positives: records.iter().filter(|p| p.label).count() },
        );
    }
    report.dangling_pairs = Some(dangling);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::anonymize::{CategorySet, NamingScheme};

    const PY: SourceLanguage = SourceLanguage::Python;

    fn strings(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn code_tokens_substitution() {
        let mut map = RenameMap::default();
        map.insert(NameCategory::Definition, "bubble_sort", "fun1");
        let tokens = strings(&["def", "bubble_sort", "(", "arr", ")", ":"]);
        assert_eq!(rewrite_code_tokens(&tokens, &map), strings(&["def", "fun1", "(", "arr", ")", ":"]));
        assert_eq!(rewrite_code_tokens(&tokens, &RenameMap::default()), tokens);
    }

    #[test]
    fn literal_text_match_is_replaced_and_counted() {
        let mut map = RenameMap::default();
        map.insert(NameCategory::Variable, "x", "var1");
        let tokens = strings(&["x", "=", "x"]);
        let (out, replaced) = rewrite_counting(&tokens, &map);
        assert_eq!(out, strings(&["var1", "=", "var1"]));
        assert_eq!(replaced, 2);
    }

    #[test]
    fn python_docstring_removed() {
        let code = "def f(a):\n    \"\"\"Return a.\"\"\"\n    return a\n";
        assert_eq!(strip_docstring(code, PY).unwrap(), "def f(a):\n    return a\n");
        let only = "def f(a):\n    '''Nothing.'''\n";
        assert_eq!(strip_docstring(only, PY).unwrap(), "def f(a):\n    pass\n");
        let none = "def f(a):\n    return 'x'\n";
        assert_eq!(strip_docstring(none, PY).unwrap(), none);
        let dedent = "if x:\n    def f(self):\n        'doc'\n    y = 1\n";
        assert_eq!(strip_docstring(dedent, PY).unwrap(), "if x:\n    def f(self):\n        pass\n    y = 1\n");
        let expr = "def f():\n    'a' + b\n";
        assert_eq!(strip_docstring(expr, PY).unwrap(), expr);
        assert_eq!(strip_docstring("def f(): 'doc'\n", PY).unwrap(), "def f(): pass\n");
    }

    #[test]
    fn javadoc_removed() {
        let code = "/** Adds. */\npublic int add(int a, int b) { /** inner */ return a + b; }";
        assert_eq!(
            strip_docstring(code, SourceLanguage::Java).unwrap(),
            "public int add(int a, int b) { /** inner */ return a + b; }"
        );
    }

    #[test]
    fn report_serializes() {
        let config = VariantConfig::from_tag("d1").unwrap();
        let report = BuildReport::new(&config);
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["variant_id"], "d1");
        assert_eq!(json["renames"]["variable"], 0);
        assert!(json.get("functions").is_none());
    }

    #[test]
    fn wrong_task_rejected() {
        let config = VariantConfig::custom(
            Task::CloneDetection,
            CategorySet::all(),
            Strategy::RandomGenerated,
            NamingScheme::Sequential,
            0,
        );
        assert!(check_config(&config, Task::CodeSearch).is_err());
    }
}
