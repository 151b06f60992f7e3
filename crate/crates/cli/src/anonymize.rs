use std::fs;
use std::io::Read;
use std::path::Path;

use anyhow::Context;
use litmask_core::corpus::{
    build_clone_variant, build_code_search_variant, strip_docstring, BuildOptions, BuildReport, ReadMode, Task,
    VariantConfig,
};
use litmask_core::anonymize::DEFAULT_RANDOM_NAME_LENGTH;
use litmask_core::seed::derive_seed;
use litmask_core::{anonymize, detokenize, NamePool, NamingScheme, PoolBuilder, SourceLanguage, Strategy};
use serde_json::{json, Value};

use crate::args::{AnonymizeArgs, RenameArgs, SchemeArg};
use crate::output::emit;
use crate::Usage;

/// Turn the renaming flags into a variant. `task` is checked against a tag
/// and used for custom variants.
pub fn resolve_variant(args: &RenameArgs, task: Option<Task>) -> anyhow::Result<VariantConfig> {
    let scheme = match (args.scheme, args.random_name_length) {
        (SchemeArg::Sequential, Some(_)) => {
            return Err(Usage("--random-name-length only applies to --scheme random-string".into()).into())
        }
        (SchemeArg::Sequential, None) => NamingScheme::Sequential,
        (SchemeArg::RandomString, Some(0)) => return Err(Usage("--random-name-length must be at least 1".into()).into()),
        (SchemeArg::RandomString, length) => NamingScheme::RandomString { length: length.unwrap_or(DEFAULT_RANDOM_NAME_LENGTH) },
    };
    let config = match &args.variant {
        Some(tag) => {
            let config = VariantConfig::from_tag(tag).map_err(|e| Usage(e.to_string()))?;
            if let Some(task) = task {
                if config.task != task {
                    let hint = match config.task {
                        Task::CodeSearch => "--in",
                        Task::CloneDetection => "--functions",
                    };
                    return Err(Usage(format!("{tag} is a {} variant; give its corpus with {hint}", config.task)).into());
                }
            }
            config
        }
        None => {
            let categories = args
                .categories
                .clone()
                .ok_or_else(|| Usage("choose what to rename with --variant or --categories".into()))?;
            let strategy = args.strategy.unwrap_or(Strategy::RandomGenerated);
            VariantConfig::custom(task.unwrap_or(Task::CodeSearch), categories, strategy, scheme, args.seed)
        }
    };
    Ok(config.with_scheme(scheme).with_seed(args.seed))
}

pub fn run(args: AnonymizeArgs) -> anyhow::Result<()> {
    if let Some(path) = &args.snippet {
        return snippet(&args, path);
    }
    let out = args.out.as_deref().ok_or_else(|| Usage("--out is required for a corpus".into()))?;
    let options = BuildOptions {
        mode: if args.lenient { ReadMode::Lenient } else { ReadMode::Strict },
        strip_docstring: args.strip_docstring,
        global_permutation: args.global_permutation,
        ..BuildOptions::default()
    };
    let report = if let Some(input) = &args.input {
        let config = resolve_variant(&args.rename, Some(Task::CodeSearch))?;
        check_global(&args, &config)?;
        refuse_overwrite(input, out)?;
        build_code_search_variant(input, out, &config, &options)?
    } else {
        let functions = args.functions.as_deref().expect("source group is required");
        let config = resolve_variant(&args.rename, Some(Task::CloneDetection))?;
        check_global(&args, &config)?;
        refuse_overwrite(functions, out)?;
        for pairs in &args.pairs {
            refuse_overwrite(pairs, &out.with_file_name(pairs.file_name().unwrap_or_default()))?;
        }
        if let Some(parent) = out.parent().filter(|p| !p.as_os_str().is_empty()) {
            fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
        }
        build_clone_variant(functions, &args.pairs, out, &config, &options)?
    };
    warn_issues(&report);
    emit(&serde_json::to_value(&report)?, args.format)
}

fn check_global(args: &AnonymizeArgs, config: &VariantConfig) -> anyhow::Result<()> {
    if args.global_permutation && config.strategy != Strategy::Shuffling {
        return Err(Usage(format!("--global-permutation needs the shuffle strategy, {} uses random", config.label())).into());
    }
    Ok(())
}

fn refuse_overwrite(input: &Path, output: &Path) -> anyhow::Result<()> {
    let same = match (input.canonicalize(), output.canonicalize()) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    };
    if same {
        return Err(Usage(format!("output {} would overwrite an input", output.display())).into());
    }
    Ok(())
}

fn warn_issues(report: &BuildReport) {
    for issue in &report.errors {
        let at = match (&issue.line, &issue.record) {
            (Some(line), _) => format!("line {line}"),
            (None, Some(record)) => format!("record {record}"),
            (None, None) => "input".into(),
        };
        eprintln!("warning: skipped {at}: {}", issue.reason);
    }
}

fn read_source(path: &Path) -> anyhow::Result<String> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).context("reading stdin")?;
        return Ok(text);
    }
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

pub fn snippet_language(path: &Path, language: Option<SourceLanguage>) -> anyhow::Result<SourceLanguage> {
    language
        .or_else(|| path.extension().and_then(|e| e.to_str()).and_then(SourceLanguage::from_extension))
        .ok_or_else(|| Usage(format!("cannot tell the language of {}; pass --language", path.display())).into())
}

pub fn load_snippet(path: &Path, language: Option<SourceLanguage>) -> anyhow::Result<(String, SourceLanguage)> {
    let language = snippet_language(path, language)?;
    Ok((read_source(path)?, language))
}

fn snippet(args: &AnonymizeArgs, path: &Path) -> anyhow::Result<()> {
    let (mut source, language) = load_snippet(path, args.language)?;
    let config = resolve_variant(&args.rename, None)?;
    check_global(args, &config)?;
    if args.strip_docstring {
        source = strip_docstring(&source, language)?;
    }
    let pool = match (config.strategy, &args.pool) {
        (Strategy::Shuffling, None) => {
            return Err(Usage(
                "shuffling a single snippet needs --pool FILE, a corpus whose names are drawn as replacements".into(),
            )
            .into())
        }
        (Strategy::Shuffling, Some(file)) => {
            let pool = load_pool(file, language, args.lenient)?;
            Some(if args.global_permutation {
                pool.with_global_permutation(derive_seed(config.seed, &format!("pool:{language}")))
            } else {
                pool
            })
        }
        (Strategy::RandomGenerated, Some(_)) => {
            return Err(Usage("--pool only applies to the shuffle strategy".into()).into())
        }
        (Strategy::RandomGenerated, None) => None,
    };
    let result = anonymize(&source, language, &config.anonymize_config(), pool.as_ref())?;
    let text = detokenize(&result.stream);
    match &args.out {
        Some(out) => fs::write(out, &text).with_context(|| format!("writing {}", out.display()))?,
        None => print!("{text}"),
    }
    if let Some(map_out) = &args.map_out {
        let entries: Vec<Value> = result
            .map
            .iter()
            .map(|(category, name, replacement)| {
                json!({ "category": category.as_str(), "name": name, "replacement": replacement })
            })
            .collect();
        fs::write(map_out, serde_json::to_string_pretty(&Value::Array(entries))? + "\n")
            .with_context(|| format!("writing {}", map_out.display()))?;
    }
    Ok(())
}

/// Names of one language from a JSONL corpus; each line contributes its
/// `code` (when its `language` matches) or its `func`.
fn load_pool(path: &Path, language: SourceLanguage, lenient: bool) -> anyhow::Result<NamePool> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut builder = PoolBuilder::new(language);
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let at = format!("{}:{}", path.display(), i + 1);
        let parsed: anyhow::Result<Option<String>> = (|| {
            let value: Value = serde_json::from_str(line)?;
            if let Some(lang) = value.get("language").and_then(Value::as_str) {
                if lang != language.as_str() {
                    return Ok(None);
                }
            }
            let code = value
                .get("code")
                .or_else(|| value.get("func"))
                .and_then(Value::as_str)
                .ok_or_else(|| anyhow::anyhow!("no `code` or `func` string"))?;
            Ok(Some(code.to_string()))
        })();
        let outcome = parsed.and_then(|code| match code {
            Some(code) => builder.add_source(&code).map_err(Into::into),
            None => Ok(()),
        });
        match outcome {
            Ok(()) => {}
            Err(err) if lenient => eprintln!("warning: skipped {at}: {err}"),
            Err(err) => return Err(err.context(at)),
        }
    }
    Ok(builder.build())
}
