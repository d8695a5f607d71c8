//! Parsing of the `--rule` argument.

use std::path::Path;

use anyhow::{bail, Context, Result};
use parity_ca::{bfo, rule_from_number, LocalRule, PatternFile, RuleNumber};

/// `bfo`, `num:<decimal>:<radius>`, or a pattern file path.
pub fn load_rule(arg: &str) -> Result<LocalRule> {
    if arg == "bfo" {
        return Ok(bfo());
    }
    if let Some(rest) = arg.strip_prefix("num:") {
        let (number, radius) = rest
            .rsplit_once(':')
            .context("expected num:<decimal>:<radius>")?;
        let number: RuleNumber = number.parse()?;
        let radius: u32 = radius
            .parse()
            .with_context(|| format!("invalid radius {radius:?}"))?;
        return Ok(rule_from_number(&number, radius)?);
    }
    let path = Path::new(arg);
    if !path.exists() {
        bail!("unknown rule {arg:?}: expected bfo, num:<decimal>:<radius> or a pattern file");
    }
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let file: PatternFile = text
        .parse()
        .with_context(|| format!("parsing {}", path.display()))?;
    let compiled = file.compile()?;
    for w in &compiled.warnings {
        eprintln!("warning: {w}");
    }
    Ok(compiled.rule)
}
