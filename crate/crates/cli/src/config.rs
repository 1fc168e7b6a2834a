//! Optional `key = value` file supplying default flag values. A key names a
//! long flag of the root command or of the selected subcommand; flags given on
//! the command line take precedence.

use anyhow::{bail, Context, Result};
use clap::Command;
use std::ffi::OsString;
use std::path::Path;

pub fn parse(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .with_context(|| format!("config line {}: expected key = value", n + 1))?;
        let v = v.trim().trim_matches('"');
        out.push((k.trim().to_string(), v.to_string()));
    }
    Ok(out)
}

/// The value of `--config` in `args`, if any.
fn config_path(args: &[String]) -> Option<String> {
    args.iter().enumerate().find_map(|(i, a)| {
        a.strip_prefix("--config=").map(str::to_string).or_else(|| {
            (a == "--config")
                .then(|| args.get(i + 1).cloned())
                .flatten()
        })
    })
}

fn long_flags(cmd: &Command) -> Vec<String> {
    cmd.get_arguments()
        .filter_map(|a| a.get_long().map(str::to_string))
        .collect()
}

fn is_switch(chain: &[&Command], long: &str) -> bool {
    chain
        .iter()
        .flat_map(|c| c.get_arguments())
        .find(|a| a.get_long() == Some(long))
        .is_some_and(|a| !a.get_action().takes_values())
}

/// The subcommand chain selected by `args` (for instance `hkl map`).
fn selected<'a>(root: &'a Command, args: &[String]) -> Vec<&'a Command> {
    let mut chain = vec![root];
    for a in args.iter().skip(1) {
        let cur = *chain.last().expect("nonempty");
        if let Some(sub) = cur.get_subcommands().find(|s| s.get_name() == a) {
            chain.push(sub);
        }
    }
    chain
}

/// `args` with `--key value` appended for every config entry whose flag is
/// accepted and not already present.
pub fn apply(root: &Command, args: Vec<String>) -> Result<Vec<OsString>> {
    let Some(path) = config_path(&args) else {
        return Ok(args.into_iter().map(OsString::from).collect());
    };
    let text = std::fs::read_to_string(Path::new(&path))
        .with_context(|| format!("reading config {path}"))?;
    let entries = parse(&text)?;
    let chain = selected(root, &args);
    let accepted: Vec<String> = chain.iter().flat_map(|c| long_flags(c)).collect();
    let mut out = args.clone();
    for (k, v) in entries {
        if !accepted.contains(&k) {
            if root.get_subcommands().any(|s| {
                long_flags(s).contains(&k)
                    || s.get_subcommands().any(|t| long_flags(t).contains(&k))
            }) {
                continue;
            }
            bail!("config {path}: unknown key {k}");
        }
        let flag = format!("--{k}");
        let given = args
            .iter()
            .any(|a| *a == flag || a.starts_with(&format!("{flag}=")));
        if given {
            continue;
        }
        if is_switch(&chain, &k) {
            match v.as_str() {
                "true" => out.push(flag),
                "false" => {}
                _ => bail!("config {path}: {k} expects true or false"),
            }
        } else {
            out.push(flag);
            out.push(v);
        }
    }
    Ok(out.into_iter().map(OsString::from).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_pairs() {
        let p = parse("# defaults\nformat = csv\n\napprox=6\n").unwrap();
        assert_eq!(
            p,
            [
                ("format".into(), "csv".into()),
                ("approx".into(), "6".into())
            ]
        );
        assert!(parse("format csv").is_err());
    }
}
