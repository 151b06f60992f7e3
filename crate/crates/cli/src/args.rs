use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use litmask_core::eval::{DistractorPool, TieBreak, DEFAULT_DISTRACTORS, DEFAULT_THRESHOLD};
use litmask_core::{CategorySet, SourceLanguage, Strategy};

#[derive(Debug, Parser)]
#[command(
    name = "litmask",
    version,
    about = "Anonymize developer-chosen names in code corpora and measure how much a matcher loses",
    after_help = "Exit status: 0 on success, 1 on runtime errors, 2 on usage errors.\n\
                  Flags may also come from --config FILE (lines of `key = value`, keys are long flag names); \
                  flags given on the command line win, and LITMASK_SEED is used only when neither sets --seed."
)]
pub struct Cli {
    /// Read default flag values from a `key = value` file.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Anonymize one snippet, a code-search corpus or a clone corpus.
    Anonymize(AnonymizeArgs),
    /// Score a corpus with the lexical baseline or an imported score file.
    #[command(subcommand)]
    Evaluate(EvaluateCommand),
    /// Count identifiers per category and list the most frequent names.
    Stats(StatsArgs),
    /// Split a JSONL file into train and test parts, keeping lines verbatim.
    Split(SplitArgs),
    /// List the sixteen variant tags and what they select.
    Variants(VariantsArgs),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    #[default]
    RandomString,
    Sequential,
}

#[derive(Debug, Args)]
pub struct RenameArgs {
    /// Variant tag d1..d16; fixes task, categories and strategy.
    #[arg(long, value_name = "TAG", conflicts_with_all = ["categories", "strategy"])]
    pub variant: Option<String>,

    /// Categories to rename, comma separated: var, def, inv.
    #[arg(long, value_name = "LIST")]
    pub categories: Option<CategorySet>,

    /// Replacement strategy: random or shuffle [default: random].
    #[arg(long, value_name = "STRATEGY")]
    pub strategy: Option<Strategy>,

    /// Spelling of random replacements.
    #[arg(long, value_enum, default_value_t)]
    pub scheme: SchemeArg,

    /// Length of random-string replacements [default: 16].
    #[arg(long, value_name = "N")]
    pub random_name_length: Option<usize>,

    /// Seed for every random choice.
    #[arg(long, env = "LITMASK_SEED", default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["snippet", "input", "functions"])))]
pub struct AnonymizeArgs {
    #[command(flatten)]
    pub rename: RenameArgs,

    /// Source file to anonymize; `-` reads stdin.
    #[arg(long, value_name = "FILE")]
    pub snippet: Option<PathBuf>,

    /// Code-search corpus (JSONL with code, code_tokens, docstring_tokens, language).
    #[arg(long = "in", value_name = "FILE")]
    pub input: Option<PathBuf>,

    /// Clone functions file (JSONL with idx and func).
    #[arg(long, value_name = "FILE")]
    pub functions: Option<PathBuf>,

    /// Clone pair file to copy next to the output; repeatable.
    #[arg(long, value_name = "FILE", requires = "functions")]
    pub pairs: Vec<PathBuf>,

    /// Output file; a snippet goes to stdout without it.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,

    /// Snippet language when the extension does not tell: java or python.
    #[arg(long, value_name = "LANG", requires = "snippet")]
    pub language: Option<SourceLanguage>,

    /// Corpus (JSONL with code or func) supplying names when shuffling a snippet.
    #[arg(long, value_name = "FILE", requires = "snippet")]
    pub pool: Option<PathBuf>,

    /// Write the snippet's rename map as JSON.
    #[arg(long, value_name = "FILE", requires = "snippet")]
    pub map_out: Option<PathBuf>,

    /// Skip malformed records instead of failing.
    #[arg(long)]
    pub lenient: bool,

    /// Remove the leading docstring or Javadoc before renaming.
    #[arg(long)]
    pub strip_docstring: bool,

    /// Shuffle with one corpus-wide permutation per category.
    #[arg(long)]
    pub global_permutation: bool,

    /// Format of the build report.
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum EvaluateCommand {
    /// Mean reciprocal rank of each record's code among sampled distractors.
    CodeSearch(SearchEvalArgs),
    /// Precision, recall and F1 of thresholded pair scores.
    Clone(CloneEvalArgs),
}

#[derive(Debug, Args)]
pub struct ScoreArgs {
    /// JSONL of {query_id, candidate_id, score} replacing the lexical scorer.
    #[arg(long, value_name = "FILE")]
    pub scores: Option<PathBuf>,

    /// Look up (b, a) when (a, b) is missing from the score file.
    #[arg(long, requires = "scores")]
    pub symmetric_scores: bool,

    /// Variant tag recorded in the report.
    #[arg(long, value_name = "TAG")]
    pub variant: Option<String>,

    /// Skip malformed records instead of failing.
    #[arg(long)]
    pub lenient: bool,

    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SearchEvalArgs {
    /// Code-search corpus to evaluate.
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,

    /// Distractors per query; capped at corpus size minus one.
    #[arg(long, default_value_t = DEFAULT_DISTRACTORS)]
    pub distractors: usize,

    /// Seed for distractor sampling.
    #[arg(long, env = "LITMASK_SEED", default_value_t = 0)]
    pub seed: u64,

    /// Rank of the gold item among equal scores: pessimistic or optimistic.
    #[arg(long, default_value = "pessimistic")]
    pub ties: TieBreak,

    /// Distractor sampling: per-query or fixed.
    #[arg(long, default_value = "per-query")]
    pub distractor_pool: DistractorPool,

    #[command(flatten)]
    pub common: ScoreArgs,
}

#[derive(Debug, Args)]
pub struct CloneEvalArgs {
    /// Clone functions file.
    #[arg(long, value_name = "FILE")]
    pub functions: PathBuf,

    /// Pair file with `idx1 idx2 label` lines.
    #[arg(long, value_name = "FILE")]
    pub pairs: PathBuf,

    /// A pair is predicted a clone when its score reaches this value.
    #[arg(long, default_value_t = DEFAULT_THRESHOLD)]
    pub threshold: f64,

    /// Extra thresholds to report, comma separated.
    #[arg(long, value_name = "LIST", value_delimiter = ',')]
    pub sweep: Vec<f64>,

    #[command(flatten)]
    pub common: ScoreArgs,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["snippet", "input", "functions"])))]
pub struct StatsArgs {
    /// Single source file; `-` reads stdin.
    #[arg(long, value_name = "FILE")]
    pub snippet: Option<PathBuf>,

    /// Code-search corpus.
    #[arg(long = "in", value_name = "FILE")]
    pub input: Option<PathBuf>,

    /// Clone functions file.
    #[arg(long, value_name = "FILE")]
    pub functions: Option<PathBuf>,

    /// Snippet language, or a filter on a code-search corpus.
    #[arg(long, value_name = "LANG")]
    pub language: Option<SourceLanguage>,

    /// Names listed per category.
    #[arg(long, default_value_t = 10)]
    pub top: usize,

    /// Skip malformed records instead of failing.
    #[arg(long)]
    pub lenient: bool,

    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SplitArgs {
    /// JSONL file to split.
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,

    #[arg(long, value_name = "FILE")]
    pub train_out: PathBuf,

    #[arg(long, value_name = "FILE")]
    pub test_out: PathBuf,

    /// Share of lines going to the train part.
    #[arg(long, default_value_t = 0.8)]
    pub fraction: f64,

    #[arg(long, env = "LITMASK_SEED", default_value_t = 0)]
    pub seed: u64,

    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VariantsArgs {
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}
