//! Text checkpoints for the exhaustive searches.
//!
//! ```text
//! ZSLAB-CKPT/1
//! 5 2 set
//! best 6
//! witness 1 2 5 7 10 12
//! nodes 40213
//! symmetry off
//! order canonical
//! open 1 3 8
//! open 1 4
//! end
//! ```
//!
//! `open` lines list unvisited subtree roots in the order they will be
//! processed; resuming visits exactly those subtrees.

use std::fmt::Write as _;

use super::search::SearchMode;
use crate::error::{Error, Result};
use crate::group::GroupSpec;

pub const CHECKPOINT_MAGIC: &str = "ZSLAB-CKPT/1";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Checkpoint {
    pub spec: GroupSpec,
    pub mode: SearchMode,
    pub best_size: usize,
    pub witness: Vec<usize>,
    pub nodes_explored: u64,
    pub symmetry: bool,
    /// Branch order; `None` is canonical index order.
    pub order: Option<Vec<usize>>,
    pub open: Vec<Vec<usize>>,
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn line_with(key: &str, rest: &[usize]) -> String {
    if rest.is_empty() {
        key.to_string()
    } else {
        format!("{key} {}", join(rest))
    }
}

impl Checkpoint {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{CHECKPOINT_MAGIC}").unwrap();
        writeln!(out, "{} {} {}", self.spec.p(), self.spec.d(), self.mode.as_str()).unwrap();
        writeln!(out, "best {}", self.best_size).unwrap();
        writeln!(out, "{}", line_with("witness", &self.witness)).unwrap();
        writeln!(out, "nodes {}", self.nodes_explored).unwrap();
        writeln!(out, "symmetry {}", if self.symmetry { "on" } else { "off" }).unwrap();
        match &self.order {
            None => writeln!(out, "order canonical").unwrap(),
            Some(o) => writeln!(out, "{}", line_with("order", o)).unwrap(),
        }
        for prefix in &self.open {
            writeln!(out, "{}", line_with("open", prefix)).unwrap();
        }
        writeln!(out, "end").unwrap();
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let bad = |line: usize, message: &str| Error::Parse { line, message: message.to_string() };
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
        let mut next = |what: &str| lines.next().ok_or_else(|| bad(0, &format!("checkpoint truncated before {what}")));

        let (n, magic) = next("the header")?;
        if magic != CHECKPOINT_MAGIC {
            return Err(bad(n, &format!("expected magic {CHECKPOINT_MAGIC}, found {magic:?}")));
        }
        let (n, spec_line) = next("the spec line")?;
        let fields: Vec<&str> = spec_line.split_whitespace().collect();
        let [p, d, mode] = fields[..] else {
            return Err(bad(n, "spec line must read \"p d mode\""));
        };
        let p: u64 = p.parse().map_err(|_| bad(n, "p is not an integer"))?;
        let d: u32 = d.parse().map_err(|_| bad(n, "d is not an integer"))?;
        let spec = GroupSpec::new(p, d)?;
        let mode = SearchMode::parse(mode).ok_or_else(|| bad(n, "mode must be \"set\" or \"sequence\""))?;

        let numbers = |n: usize, rest: &str| -> Result<Vec<usize>> {
            rest.split_whitespace()
                .map(|t| {
                    let v: usize = t.parse().map_err(|_| bad(n, &format!("{t:?} is not an index")))?;
                    if v >= spec.order() {
                        return Err(bad(n, &format!("index {v} is outside the group")));
                    }
                    Ok(v)
                })
                .collect()
        };
        let keyed = |(n, line): (usize, &str), key: &str| -> Result<(usize, String)> {
            let rest = line.strip_prefix(key).ok_or_else(|| bad(n, &format!("expected a {key:?} line")))?;
            if !rest.is_empty() && !rest.starts_with(' ') {
                return Err(bad(n, &format!("expected a {key:?} line")));
            }
            Ok((n, rest.trim().to_string()))
        };

        let (n, best) = keyed(next("best")?, "best")?;
        let best_size = best.parse().map_err(|_| bad(n, "best is not an integer"))?;
        let (n, w) = keyed(next("witness")?, "witness")?;
        let witness = numbers(n, &w)?;
        let (n, nodes) = keyed(next("nodes")?, "nodes")?;
        let nodes_explored = nodes.parse().map_err(|_| bad(n, "nodes is not an integer"))?;
        let (n, sym) = keyed(next("symmetry")?, "symmetry")?;
        let symmetry = match sym.as_str() {
            "on" => true,
            "off" => false,
            _ => return Err(bad(n, "symmetry must be on or off")),
        };
        let (n, ord) = keyed(next("order")?, "order")?;
        let order = if ord == "canonical" { None } else { Some(numbers(n, &ord)?) };

        let mut open = Vec::new();
        loop {
            let (n, line) = next("end")?;
            if line == "end" {
                break;
            }
            let (n, rest) = keyed((n, line), "open")?;
            open.push(numbers(n, &rest)?);
        }
        if witness.len() != best_size {
            return Err(bad(0, "witness length does not match best"));
        }
        Ok(Checkpoint { spec, mode, best_size, witness, nodes_explored, symmetry, order, open })
    }
}
