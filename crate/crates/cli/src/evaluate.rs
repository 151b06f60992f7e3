use litmask_core::corpus::{read_clone_functions, read_clone_pairs, read_code_search_corpus, ReadMode, VariantConfig};
use litmask_core::eval::{
    import_external_scores, run_clone_eval, run_code_search_eval, CloneEvalOptions, CodeSearchOptions, EvalReport,
    LexicalScorer, ScoreTable,
};

use crate::args::{CloneEvalArgs, EvaluateCommand, Format, ScoreArgs, SearchEvalArgs};
use crate::Usage;

pub fn run(command: EvaluateCommand) -> anyhow::Result<()> {
    let (report, format) = match command {
        EvaluateCommand::CodeSearch(args) => (code_search(&args)?, args.common.format),
        EvaluateCommand::Clone(args) => (clone(&args)?, args.common.format),
    };
    match format {
        Format::Json => println!("{}", report.to_json()),
        Format::Table => print!("{}", report.to_table()),
    }
    Ok(())
}

fn mode(common: &ScoreArgs) -> ReadMode {
    if common.lenient {
        ReadMode::Lenient
    } else {
        ReadMode::Strict
    }
}

fn variant_id(common: &ScoreArgs) -> anyhow::Result<Option<String>> {
    match &common.variant {
        Some(tag) => Ok(VariantConfig::from_tag(tag).map_err(|e| Usage(e.to_string()))?.variant_id),
        None => Ok(None),
    }
}

fn score_table(common: &ScoreArgs) -> anyhow::Result<Option<ScoreTable>> {
    let Some(path) = &common.scores else { return Ok(None) };
    let table = import_external_scores(path)?;
    Ok(Some(if common.symmetric_scores { table.symmetric() } else { table }))
}

fn code_search(args: &SearchEvalArgs) -> anyhow::Result<EvalReport> {
    if args.distractors == 0 {
        return Err(Usage("--distractors must be at least 1".into()).into());
    }
    let options = CodeSearchOptions {
        distractors: args.distractors,
        seed: args.seed,
        ties: args.ties,
        pool: args.distractor_pool,
        variant_id: variant_id(&args.common)?,
    };
    let mut reader = read_code_search_corpus(&args.input, mode(&args.common))?;
    let records = reader.by_ref().collect::<Result<Vec<_>, _>>()?;
    for issue in reader.issues() {
        eprintln!("warning: skipped line {}: {}", issue.line.unwrap_or(0), issue.reason);
    }
    Ok(match score_table(&args.common)? {
        Some(table) => run_code_search_eval(&records, &table, &options)?,
        None => run_code_search_eval(&records, &LexicalScorer, &options)?,
    })
}

fn clone(args: &CloneEvalArgs) -> anyhow::Result<EvalReport> {
    for t in std::iter::once(&args.threshold).chain(&args.sweep) {
        if !t.is_finite() {
            return Err(Usage(format!("threshold {t} is not a finite number")).into());
        }
    }
    let options =
        CloneEvalOptions { threshold: args.threshold, sweep: args.sweep.clone(), variant_id: variant_id(&args.common)? };
    let (functions, issues) = read_clone_functions(&args.functions, mode(&args.common))?;
    for issue in issues {
        eprintln!("warning: skipped line {}: {}", issue.line.unwrap_or(0), issue.reason);
    }
    let pairs = read_clone_pairs(&args.pairs)?;
    Ok(match score_table(&args.common)? {
        Some(table) => run_clone_eval(&functions, &pairs, &table, &options)?,
        None => run_clone_eval(&functions, &pairs, &LexicalScorer, &options)?,
    })
}
