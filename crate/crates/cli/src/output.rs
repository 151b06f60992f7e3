use std::fs;
use std::io::Write;

use anyhow::Context;
use litmask_core::corpus::{split as split_items, VariantConfig};
use serde_json::{json, Value};

use crate::args::{Format, SplitArgs, VariantsArgs};

pub fn print_json(value: &Value) -> anyhow::Result<()> {
    let mut out = std::io::stdout().lock();
    writeln!(out, "{}", serde_json::to_string_pretty(value)?)?;
    Ok(())
}

/// Two-column `key  value` rendering of a flat JSON object.
pub fn kv_table(rows: &[(String, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect()
}

pub fn scalar(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

/// Flatten nested objects into dotted keys; arrays stay JSON.
pub fn flatten(prefix: &str, value: &Value, rows: &mut Vec<(String, String)>) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, v, rows);
            }
        }
        other => rows.push((prefix.to_string(), scalar(other))),
    }
}

pub fn emit(value: &Value, format: Format) -> anyhow::Result<()> {
    match format {
        Format::Json => print_json(value),
        Format::Table => {
            let mut rows = Vec::new();
            flatten("", value, &mut rows);
            print!("{}", kv_table(&rows));
            Ok(())
        }
    }
}

pub fn split(args: SplitArgs) -> anyhow::Result<()> {
    let text = fs::read_to_string(&args.input).with_context(|| format!("reading {}", args.input.display()))?;
    let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
    let (train, test) = split_items(lines, args.fraction, args.seed)?;
    for (path, part) in [(&args.train_out, &train), (&args.test_out, &test)] {
        let body: String = part.iter().map(|l| format!("{l}\n")).collect();
        fs::write(path, body).with_context(|| format!("writing {}", path.display()))?;
    }
    emit(&json!({ "train": train.len(), "test": test.len(), "fraction": args.fraction, "seed": args.seed }), args.format)
}

pub fn variants(args: VariantsArgs) -> anyhow::Result<()> {
    let rows: Vec<VariantConfig> =
        VariantConfig::all_tags().map(|t| VariantConfig::from_tag(&t)).collect::<Result<_, _>>()?;
    match args.format {
        Format::Json => {
            let list: Vec<Value> = rows
                .iter()
                .map(|v| {
                    json!({
                        "tag": v.variant_id,
                        "task": v.task.as_str(),
                        "languages": v.languages.iter().map(|l| l.as_str()).collect::<Vec<_>>(),
                        "categories": v.categories.to_string(),
                        "strategy": v.strategy.as_str(),
                    })
                })
                .collect();
            print_json(&Value::Array(list))
        }
        Format::Table => {
            println!("{:<4} {:<16} {:<12} strategy", "tag", "task", "categories");
            for v in &rows {
                println!(
                    "{:<4} {:<16} {:<12} {}",
                    v.variant_id.as_deref().unwrap_or("-"),
                    v.task.as_str(),
                    v.categories.to_string(),
                    v.strategy.as_str()
                );
            }
            Ok(())
        }
    }
}
