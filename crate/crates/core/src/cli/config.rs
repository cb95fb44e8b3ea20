//! `--config FILE`: a flat `key = value` file whose entries become flags
//! placed ahead of the command-line ones, so the command line wins.

use std::ffi::OsString;
use std::fs;
use std::path::Path;

const SUBCOMMANDS: [&str; 8] = [
    "spectrum",
    "scatter",
    "wavefunction",
    "transfer",
    "poles",
    "cubic",
    "moments",
    "validate",
];

/// Global options that consume the following argument.
const VALUED_GLOBALS: [&str; 4] = ["--config", "--format", "--output", "-o"];

/// Parses `key = value` lines; `#` starts a comment. `true`/`false` values
/// become bare flags or are dropped.
pub fn parse_config(text: &str) -> Result<Vec<OsString>, String> {
    let mut args = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {}: expected key = value", n + 1))?;
        let key = key.trim().replace('_', "-");
        let value = value.trim();
        if key.is_empty() || key.starts_with('-') {
            return Err(format!("config line {}: bad key '{key}'", n + 1));
        }
        if key == "config" {
            return Err(format!("config line {}: nested config files are not supported", n + 1));
        }
        match value {
            "true" => args.push(format!("--{key}").into()),
            "false" => {}
            v => {
                args.push(format!("--{key}").into());
                args.push(v.into());
            }
        }
    }
    Ok(args)
}

/// The value of `--config` if present.
pub fn config_path(argv: &[OsString]) -> Option<OsString> {
    let mut it = argv.iter().skip(1);
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--" {
            break;
        }
        if s == "--config" {
            return it.next().cloned();
        }
        if let Some(v) = s.strip_prefix("--config=") {
            return Some(v.into());
        }
    }
    None
}

/// Index of the subcommand token, skipping values of global options.
fn subcommand_index(argv: &[OsString]) -> Option<usize> {
    let mut i = 1;
    while i < argv.len() {
        let s = argv[i].to_string_lossy();
        if VALUED_GLOBALS.contains(&s.as_ref()) {
            i += 2;
            continue;
        }
        if SUBCOMMANDS.contains(&s.as_ref()) {
            return Some(i);
        }
        i += 1;
    }
    None
}

/// argv with the config entries inserted right after the subcommand.
pub fn merge(argv: Vec<OsString>) -> Result<Vec<OsString>, String> {
    let Some(path) = config_path(&argv) else {
        return Ok(argv);
    };
    let text = fs::read_to_string(Path::new(&path))
        .map_err(|e| format!("cannot read config {}: {e}", Path::new(&path).display()))?;
    let extra = parse_config(&text)?;
    let Some(at) = subcommand_index(&argv) else {
        return Ok(argv);
    };
    let mut merged = argv[..=at].to_vec();
    merged.extend(extra);
    merged.extend_from_slice(&argv[at + 1..]);
    Ok(merged)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn os(v: &[&str]) -> Vec<OsString> {
        v.iter().map(|s| s.into()).collect()
    }

    #[test]
    fn parses_flat_file() {
        let a = parse_config("family = v5\n# comment\nv0=50  # depth\ncosmetic_flip = true\nnonphysical = false\n").unwrap();
        assert_eq!(a, os(&["--family", "v5", "--v0", "50", "--cosmetic-flip"]));
        assert!(parse_config("novalue\n").is_err());
        assert!(parse_config("config = x\n").is_err());
    }

    #[test]
    fn finds_subcommand_after_globals() {
        let argv = os(&["bw", "--format", "json", "--config", "c.txt", "spectrum", "--v0", "1"]);
        assert_eq!(subcommand_index(&argv), Some(5));
        assert_eq!(config_path(&argv), Some("c.txt".into()));
        assert_eq!(config_path(&os(&["bw", "--config=x", "cubic"])), Some("x".into()));
    }
}
