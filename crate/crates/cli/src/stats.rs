use std::collections::{BTreeMap, HashMap};

use anyhow::Context;
use litmask_core::corpus::{read_clone_functions, read_code_search_corpus, ReadMode};
use litmask_core::{classify_names, tokenize, NameCategory, PoolBuilder, SourceLanguage};
use serde_json::{json, Map, Value};

use crate::anonymize::load_snippet;
use crate::args::{Format, StatsArgs};
use crate::output::{kv_table, print_json};

#[derive(Default)]
struct Tally {
    records: usize,
    skipped: usize,
    symbols: BTreeMap<NameCategory, usize>,
    occurrences: BTreeMap<NameCategory, usize>,
    /// Records in which each name appears, per category.
    frequency: HashMap<(NameCategory, String), usize>,
    pools: BTreeMap<SourceLanguage, PoolBuilder>,
}

impl Tally {
    fn add(&mut self, at: &str, source: &str, language: SourceLanguage, lenient: bool) -> anyhow::Result<()> {
        let stream = match tokenize(source, language) {
            Ok(stream) => stream,
            Err(err) if lenient => {
                eprintln!("warning: skipped {at}: {err}");
                self.skipped += 1;
                return Ok(());
            }
            Err(err) => return Err(err).context(at.to_string()),
        };
        let inventory = classify_names(&stream);
        self.records += 1;
        for (name, category) in &inventory.symbols {
            *self.symbols.entry(*category).or_default() += 1;
            *self.frequency.entry((*category, name.clone())).or_default() += 1;
        }
        for occurrence in &inventory.occurrences {
            *self.occurrences.entry(occurrence.category).or_default() += 1;
        }
        self.pools.entry(language).or_insert_with(|| PoolBuilder::new(language)).add(&inventory);
        Ok(())
    }

    fn top(&self, category: NameCategory, n: usize) -> Vec<(&str, usize)> {
        let mut names: Vec<(&str, usize)> = self
            .frequency
            .iter()
            .filter(|((c, _), _)| *c == category)
            .map(|((_, name), count)| (name.as_str(), *count))
            .collect();
        names.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(b.0)));
        names.truncate(n);
        names
    }
}

fn plural(category: NameCategory) -> &'static str {
    match category {
        NameCategory::Variable => "variables",
        NameCategory::Definition => "definitions",
        NameCategory::Invocation => "invocations",
        NameCategory::Preserved => "preserved",
    }
}

pub fn run(args: StatsArgs) -> anyhow::Result<()> {
    let mode = if args.lenient { ReadMode::Lenient } else { ReadMode::Strict };
    let mut tally = Tally::default();
    if let Some(path) = &args.snippet {
        let (source, language) = load_snippet(path, args.language)?;
        tally.add(&path.display().to_string(), &source, language, false)?;
    } else if let Some(path) = &args.input {
        let mut reader = read_code_search_corpus(path, mode)?;
        for record in reader.by_ref() {
            let record = record?;
            if args.language.is_some_and(|l| l != record.language) {
                continue;
            }
            tally.add(&format!("line {}", record.line), &record.code, record.language, args.lenient)?;
        }
        for issue in reader.issues() {
            eprintln!("warning: skipped line {}: {}", issue.line.unwrap_or(0), issue.reason);
            tally.skipped += 1;
        }
    } else if let Some(path) = &args.functions {
        let (functions, issues) = read_clone_functions(path, mode)?;
        for issue in &issues {
            eprintln!("warning: skipped line {}: {}", issue.line.unwrap_or(0), issue.reason);
        }
        tally.skipped += issues.len();
        for f in &functions {
            tally.add(&format!("function {}", f.idx), &f.func, SourceLanguage::Java, args.lenient)?;
        }
    }

    let counts: Map<String, Value> = NameCategory::RENAMEABLE
        .iter()
        .map(|c| (plural(*c).to_string(), json!(tally.symbols.get(c).copied().unwrap_or(0))))
        .collect();
    let occurrences: Map<String, Value> = NameCategory::RENAMEABLE
        .iter()
        .chain([&NameCategory::Preserved])
        .map(|c| (plural(*c).to_string(), json!(tally.occurrences.get(c).copied().unwrap_or(0))))
        .collect();
    let pools: BTreeMap<&str, Value> = std::mem::take(&mut tally.pools)
        .into_iter()
        .map(|(l, b)| Ok((l.as_str(), serde_json::to_value(b.build().sizes())?)))
        .collect::<anyhow::Result<_>>()?;
    let top: Map<String, Value> = NameCategory::RENAMEABLE
        .iter()
        .map(|c| {
            let list: Vec<Value> =
                tally.top(*c, args.top).into_iter().map(|(name, n)| json!({ "name": name, "records": n })).collect();
            (plural(*c).to_string(), Value::Array(list))
        })
        .collect();

    match args.format {
        Format::Json => print_json(&json!({
            "records": tally.records,
            "skipped": tally.skipped,
            "counts": counts,
            "occurrences": occurrences,
            "pool_sizes": pools,
            "top": top,
        })),
        Format::Table => {
            let mut rows = vec![("records".to_string(), tally.records.to_string())];
            rows.push(("skipped".into(), tally.skipped.to_string()));
            for (k, v) in &counts {
                rows.push((k.clone(), v.to_string()));
            }
            for (k, v) in &occurrences {
                rows.push((format!("{k} occurrences"), v.to_string()));
            }
            for (lang, sizes) in &pools {
                if let Value::Object(sizes) = sizes {
                    for (k, v) in sizes {
                        rows.push((format!("pool {lang} {k}"), v.to_string()));
                    }
                }
            }
            for (k, v) in &top {
                let names: Vec<String> = v
                    .as_array()
                    .into_iter()
                    .flatten()
                    .map(|e| format!("{} ({})", e["name"].as_str().unwrap_or(""), e["records"]))
                    .collect();
                rows.push((format!("top {k}"), names.join(", ")));
            }
            print!("{}", kv_table(&rows));
            Ok(())
        }
    }
}
