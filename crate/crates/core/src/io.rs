//! The plain-text sequence file format.
//!
//! ```text
//! # two points of F_5^2, the second one three times
//! 5 2
//! 1 0
//! 2 4 x3
//! ```
//!
//! The first non-comment line is the header `p d`. Every later non-blank
//! line holds `d` residues and an optional multiplicity `xk` with `k ≥ 1`.
//! A `#` starts a comment that runs to the end of the line. Writing always
//! produces the canonical form: entries sorted by index, repeated elements
//! merged, multiplicity omitted when it is 1.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::sumset::ElementSequence;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn parse_number<T: std::str::FromStr>(tok: &str, line: usize, what: &str) -> Result<T> {
    tok.parse().map_err(|_| parse_err(line, format!("expected {what}, found `{tok}`")))
}

/// Parses a sequence file. Line numbers in errors are 1-based.
pub fn parse_sequence(text: &str) -> Result<ElementSequence> {
    let mut spec: Option<GroupSpec> = None;
    let mut pairs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let Some(spec) = spec else {
            if tokens.len() != 2 {
                return Err(parse_err(line, format!("header must be `p d`, found {} fields", tokens.len())));
            }
            let p: u64 = parse_number(tokens[0], line, "a prime p")?;
            let d: u32 = parse_number(tokens[1], line, "a dimension d")?;
            spec = Some(GroupSpec::new(p, d).map_err(|e| match e {
                Error::TooLarge { .. } => e,
                other => parse_err(line, other.to_string()),
            })?);
            continue;
        };
        let (coords, k) = match tokens.split_last() {
            Some((last, rest)) if last.starts_with('x') => {
                let k: usize = parse_number(&last[1..], line, "a multiplicity after `x`")?;
                if k == 0 {
                    return Err(parse_err(line, "multiplicity must be at least 1"));
                }
                (rest, k)
            }
            _ => (&tokens[..], 1),
        };
        if coords.len() != spec.d() {
            return Err(parse_err(line, format!("expected {} residues, found {}", spec.d(), coords.len())));
        }
        let residues = coords
            .iter()
            .map(|t| parse_number::<u32>(t, line, "a residue"))
            .collect::<Result<Vec<_>>>()?;
        let index = spec.encode(&residues).map_err(|e| parse_err(line, e.to_string()))?;
        pairs.push((index, k));
    }
    let spec = spec.ok_or_else(|| parse_err(text.lines().count().max(1), "missing header `p d`"))?;
    ElementSequence::from_pairs(spec, pairs)
}

pub fn read_sequence(path: impl AsRef<Path>) -> Result<ElementSequence> {
    parse_sequence(&std::fs::read_to_string(path)?)
}

/// Canonical text form of a sequence.
pub fn write_sequence(seq: &ElementSequence) -> String {
    let spec = seq.spec();
    let mut out = format!("{} {}\n", spec.p(), spec.d());
    for &(x, k) in seq.entries() {
        let coords: Vec<String> = spec.decode(x).iter().map(u32::to_string).collect();
        out.push_str(&coords.join(" "));
        if k > 1 {
            let _ = write!(out, " x{k}");
        }
        out.push('\n');
    }
    out
}
