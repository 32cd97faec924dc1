//! Flag defaults from a TOML file.
//!
//! Top-level scalar keys set global flags (`seed`, `tol`, `out`); a table
//! named after the subcommand path (`[dj-axioms]`, `[timefn-build]`) sets that
//! subcommand's flags. Flags given on the command line win. Keys may use `_`
//! or `-`.

use std::path::Path;

use anyhow::{bail, Context, Result};
use toml::{Table, Value};

fn flag_present(argv: &[String], flag: &str) -> bool {
    argv.iter().any(|a| a == flag || a.starts_with(&format!("{flag}=")))
}

fn push_value(out: &mut Vec<String>, flag: &str, value: &Value) -> Result<()> {
    match value {
        Value::Boolean(true) => out.push(flag.to_string()),
        Value::Boolean(false) => {}
        Value::String(s) => {
            out.push(flag.to_string());
            out.push(s.clone());
        }
        Value::Integer(i) => {
            out.push(flag.to_string());
            out.push(i.to_string());
        }
        Value::Float(x) => {
            out.push(flag.to_string());
            out.push(format!("{x:?}"));
        }
        Value::Array(items) => {
            for item in items {
                push_value(out, flag, item)?;
            }
        }
        other => bail!("unsupported config value for {flag}: {other}"),
    }
    Ok(())
}

/// The `--config` path in `argv`, if any.
pub fn config_path(argv: &[String]) -> Option<String> {
    let mut it = argv.iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            return it.next().cloned();
        }
        if let Some(p) = a.strip_prefix("--config=") {
            return Some(p.to_string());
        }
    }
    None
}

/// Appends flags from `table` that `argv` does not already set.
pub fn apply(argv: &[String], table: &Table, slug: &str) -> Result<Vec<String>> {
    let mut out = argv.to_vec();
    for (key, value) in table {
        if value.is_table() {
            continue;
        }
        let flag = format!("--{}", key.replace('_', "-"));
        if !flag_present(argv, &flag) {
            push_value(&mut out, &flag, value)?;
        }
    }
    if let Some(section) = table.get(slug).and_then(Value::as_table) {
        for (key, value) in section {
            let flag = format!("--{}", key.replace('_', "-"));
            if !flag_present(argv, &flag) {
                push_value(&mut out, &flag, value)?;
            }
        }
    }
    Ok(out)
}

pub fn load(path: &Path) -> Result<Table> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    text.parse::<Table>().with_context(|| format!("parsing {}", path.display()))
}
