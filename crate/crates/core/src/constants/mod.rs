//! Olson and Davenport constants by exhaustive search, and the
//! Erdős–Heilbronn type lower bound for restricted subsums in F_p.

mod checkpoint;
mod search;

pub use checkpoint::{Checkpoint, CHECKPOINT_MAGIC};
pub use search::{
    enumerate_sets, search, CheckpointSink, Enumeration, SearchConfig, SearchMode, SearchOutcome,
    CHECKPOINT_CADENCE,
};

use serde::Serialize;

use crate::error::{ensure, Result};
use crate::group::GroupSpec;

/// A published value or bound printed next to a computed constant.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Reference {
    pub label: String,
    pub value: f64,
    /// Whether the computed value agrees (equality for identities, the
    /// inequality for bounds). `None` when the search did not finish.
    pub consistent: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstantResult {
    pub spec: GroupSpec,
    pub mode: SearchMode,
    /// Exact when `exhausted`, otherwise a certified lower bound.
    pub lower: usize,
    pub upper: Option<usize>,
    pub exhausted: bool,
    pub witness: Vec<usize>,
    pub nodes_explored: u64,
    pub references: Vec<Reference>,
    #[serde(skip)]
    pub checkpoint: Option<Checkpoint>,
}

impl ConstantResult {
    /// The constant, if it was determined exactly.
    pub fn value(&self) -> Option<usize> {
        self.exhausted.then_some(self.lower)
    }
}

/// Longest zero-sum-free subset of F_p^d: `(size, witness, exhausted)` plus
/// the raw search statistics.
pub fn max_zero_sum_free_set(spec: GroupSpec, config: &SearchConfig) -> Result<SearchOutcome> {
    search(spec, SearchMode::Set, config, None, None)
}

/// Longest zero-sum-free sequence in F_p^d.
pub fn max_zero_sum_free_sequence(spec: GroupSpec, config: &SearchConfig) -> Result<SearchOutcome> {
    search(spec, SearchMode::Sequence, config, None, None)
}

fn finish(spec: GroupSpec, out: SearchOutcome, upper: Option<usize>, references: Vec<Reference>) -> ConstantResult {
    ConstantResult {
        spec,
        mode: out.mode,
        lower: out.best_size + 1,
        upper: if out.exhausted { Some(out.best_size + 1) } else { upper },
        exhausted: out.exhausted,
        witness: out.witness,
        nodes_explored: out.nodes_explored,
        references,
        checkpoint: out.checkpoint,
    }
}

/// `OL(F_p) ≤ ⌈√(2p) + 5 log p⌉` (natural logarithm).
pub fn olson_line_bound(p: u64) -> u64 {
    let p = p as f64;
    ((2.0 * p).sqrt() + 5.0 * p.ln()).ceil() as u64
}

/// Olson constant `OL(F_p^d)`: the least `k` such that no `k`-subset is
/// zero-sum-free.
///
/// For `d = 2` the result carries the comparison with `p + OL(F_p) - 1`,
/// which needs `OL(F_p)` and therefore runs a (cheap) second search over F_p.
pub fn olson_constant(
    spec: GroupSpec,
    config: &SearchConfig,
    resume: Option<&Checkpoint>,
    sink: Option<&mut CheckpointSink<'_>>,
) -> Result<ConstantResult> {
    let out = search(spec, SearchMode::Set, config, resume, sink)?;
    let value = out.exhausted.then_some(out.best_size as f64 + 1.0);
    let mut refs = Vec::new();
    let order = spec.order() as f64;
    refs.push(Reference {
        label: "2*sqrt(|G|)".into(),
        value: 2.0 * order.sqrt(),
        consistent: value.map(|v| v <= 2.0 * order.sqrt()),
    });
    if spec.d() == 1 {
        let bound = olson_line_bound(spec.p() as u64) as f64;
        refs.push(Reference {
            label: "ceil(sqrt(2p) + 5 ln p)".into(),
            value: bound,
            consistent: value.map(|v| v <= bound),
        });
    }
    if spec.d() == 2 {
        let line = GroupSpec::new(spec.p() as u64, 1)?;
        let line_out = search(line, SearchMode::Set, &SearchConfig::for_spec(line), None, None)?;
        let identity = (spec.p() as usize + line_out.best_size) as f64;
        refs.push(Reference {
            label: "p + OL(F_p) - 1".into(),
            value: identity,
            consistent: value.map(|v| v == identity),
        });
    }
    Ok(finish(spec, out, None, refs))
}

/// Davenport constant `D(F_p^d)`: the least length forcing a zero-sum
/// subsequence. When the search is cut short the upper bound is `d(p-1)+1`.
pub fn davenport_constant(
    spec: GroupSpec,
    config: &SearchConfig,
    resume: Option<&Checkpoint>,
    sink: Option<&mut CheckpointSink<'_>>,
) -> Result<ConstantResult> {
    let out = search(spec, SearchMode::Sequence, config, resume, sink)?;
    let formula = spec.d() * (spec.p() as usize - 1) + 1;
    let refs = vec![Reference {
        label: "d(p-1)+1".into(),
        value: formula as f64,
        consistent: out.exhausted.then_some(out.best_size + 1 == formula),
    }];
    Ok(finish(spec, out, Some(formula), refs))
}

/// `min{p, m n - m² + 1}`: the guaranteed size of `m*A` for an `n`-subset `A`
/// of F_p.
pub fn eh_bound(m: u64, n: u64, p: u64) -> Result<u64> {
    ensure!(m >= 1 && m <= n, Input, "need 1 <= m <= n, got m = {m}, n = {n}");
    Ok(p.min(m * n - m * m + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eh_examples() {
        assert_eq!(eh_bound(2, 5, 11).unwrap(), 7);
        assert_eq!(eh_bound(1, 4, 11).unwrap(), 4);
        assert_eq!(eh_bound(3, 10, 13).unwrap(), 13);
        assert!(eh_bound(0, 3, 5).is_err());
        assert!(eh_bound(4, 3, 5).is_err());
    }

    #[test]
    fn olson_small() {
        for (p, ol) in [(2, 2), (3, 2), (5, 3), (7, 4)] {
            let spec = GroupSpec::new(p, 1).unwrap();
            let r = olson_constant(spec, &SearchConfig::for_spec(spec), None, None).unwrap();
            assert_eq!(r.value(), Some(ol), "p={p}");
            assert!(r.references.iter().all(|x| x.consistent == Some(true)));
        }
    }

    #[test]
    fn davenport_formula() {
        for (p, d) in [(3, 1), (5, 1), (7, 1), (3, 2)] {
            let spec = GroupSpec::new(p, d).unwrap();
            let r = davenport_constant(spec, &SearchConfig::for_spec(spec), None, None).unwrap();
            assert_eq!(r.value(), Some(d as usize * (p as usize - 1) + 1));
        }
        let spec = GroupSpec::new(5, 1).unwrap();
        let r = davenport_constant(spec, &SearchConfig::for_spec(spec), None, None).unwrap();
        assert_eq!(r.witness, vec![1, 1, 1, 1]);
    }

    #[test]
    fn partial_result_is_bracketed() {
        let spec = GroupSpec::new(3, 2).unwrap();
        let mut cfg = SearchConfig::for_spec(spec);
        cfg.budget = Some(2);
        let r = davenport_constant(spec, &cfg, None, None).unwrap();
        assert!(!r.exhausted);
        assert_eq!(r.value(), None);
        assert_eq!(r.upper, Some(5));
        assert!(r.lower <= 5);
    }
}
