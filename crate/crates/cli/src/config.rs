//! `key = value` config files, spliced into argv behind the subcommand so
//! that clap validates them like any other flag.

use std::ffi::OsString;

use anyhow::Context;
use clap::CommandFactory;

use crate::args::Cli;
use crate::Usage;

pub fn expand_args(args: Vec<OsString>) -> anyhow::Result<Vec<OsString>> {
    let Some(path) = config_path(&args) else {
        return Ok(args);
    };
    let text = std::fs::read_to_string(&path).with_context(|| format!("reading config {}", path))?;

    let root = Cli::command();
    let mut command = &root;
    let mut insert_at = None;
    for (i, arg) in args.iter().enumerate().skip(1) {
        let Some(arg) = arg.to_str() else { continue };
        if let Some(sub) = command.find_subcommand(arg) {
            command = sub;
            insert_at = Some(i + 1);
        }
    }
    let Some(insert_at) = insert_at else {
        return Ok(args);
    };

    let mut extra = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Usage(format!("{path}:{}: expected `key = value`", n + 1)).into());
        };
        let (key, value) = (key.trim(), value.trim());
        if key == "config" {
            return Err(Usage(format!("{path}:{}: config files cannot include others", n + 1)).into());
        }
        let arg = command.get_arguments().find(|a| a.get_long() == Some(key)).ok_or_else(|| {
            Usage(format!("{path}:{}: `{key}` is not an option of `{}`", n + 1, command.get_name()))
        })?;
        if given_on_command_line(&args[insert_at..], key) {
            continue;
        }
        if arg.get_action().takes_values() {
            extra.push(OsString::from(format!("--{key}={value}")));
        } else {
            match value {
                "true" | "yes" | "1" => extra.push(OsString::from(format!("--{key}"))),
                "false" | "no" | "0" => {}
                _ => return Err(Usage(format!("{path}:{}: `{key}` takes true or false", n + 1)).into()),
            }
        }
    }
    let mut out = args;
    out.splice(insert_at..insert_at, extra);
    Ok(out)
}

fn config_path(args: &[OsString]) -> Option<String> {
    let mut iter = args.iter().skip(1).filter_map(|a| a.to_str());
    while let Some(arg) = iter.next() {
        if arg == "--" {
            return None;
        }
        if arg == "--config" {
            return iter.next().map(String::from);
        }
        if let Some(path) = arg.strip_prefix("--config=") {
            return Some(path.to_string());
        }
    }
    None
}

fn given_on_command_line(args: &[OsString], key: &str) -> bool {
    let flag = format!("--{key}");
    let prefix = format!("--{key}=");
    args.iter().filter_map(|a| a.to_str()).any(|a| a == flag || a.starts_with(&prefix))
}
