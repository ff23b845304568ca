//! Depth-first search for long zero-sum-free sets and sequences.
//!
//! A node is a zero-sum-free prefix listed in branch order (strictly
//! increasing for sets, non-decreasing for sequences) together with its
//! subsequence-sum set `S`. Extending by `x` is legal iff `x ≠ 0` and
//! `-x ∉ S`, and the new sum set is `S ∪ (S + x) ∪ {x}`.

use std::sync::atomic::{AtomicBool, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use super::checkpoint::Checkpoint;
use crate::error::{ensure, Error, Result};
use crate::group::GroupSpec;
use crate::sumset::IndicatorSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    /// Distinct elements (Olson constant).
    Set,
    /// Repetition allowed (Davenport constant).
    Sequence,
}

impl SearchMode {
    pub fn as_str(self) -> &'static str {
        match self {
            SearchMode::Set => "set",
            SearchMode::Sequence => "sequence",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "set" => Some(SearchMode::Set),
            "sequence" => Some(SearchMode::Sequence),
            _ => None,
        }
    }
}

/// Nodes between periodic checkpoints.
pub const CHECKPOINT_CADENCE: u64 = 1 << 20;

pub type CheckpointSink<'a> = dyn FnMut(&Checkpoint) -> Result<()> + 'a;

#[derive(Debug, Clone)]
pub struct SearchConfig {
    /// Maximum number of nodes to visit in this run.
    pub budget: Option<u64>,
    /// Fix the first element to the first nonzero element of the branch order.
    /// Sound because invertible linear maps act transitively on nonzero vectors
    /// and preserve zero-sum-freeness.
    pub symmetry: bool,
    /// Branch order over the nonzero elements; `None` is canonical index order.
    pub order: Option<Vec<usize>>,
    pub threads: usize,
    /// A known zero-sum-free witness; the search only looks for longer ones.
    pub initial_witness: Option<Vec<usize>>,
    pub checkpoint_every: u64,
    pub stop: Option<std::sync::Arc<AtomicBool>>,
}

impl SearchConfig {
    /// Defaults: symmetry on for `d = 1`, off otherwise; one thread; no budget.
    pub fn for_spec(spec: GroupSpec) -> Self {
        SearchConfig {
            budget: None,
            symmetry: spec.d() == 1,
            order: None,
            threads: 1,
            initial_witness: None,
            checkpoint_every: CHECKPOINT_CADENCE,
            stop: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    pub mode: SearchMode,
    /// Longest zero-sum-free set or sequence found.
    pub best_size: usize,
    pub witness: Vec<usize>,
    /// The whole tree was explored, so `best_size` is exact.
    pub exhausted: bool,
    pub nodes_explored: u64,
    #[serde(skip)]
    pub checkpoint: Option<Checkpoint>,
}

/// All zero-sum-free sets of a fixed size, as found by [`enumerate_sets`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub sets: Vec<Vec<usize>>,
    pub exhausted: bool,
    pub nodes_explored: u64,
}

enum Goal {
    Maximize,
    Enumerate { size: usize, found: Vec<Vec<usize>> },
}

enum Frame {
    Children { prefix: Vec<usize>, set: IndicatorSet, candidates: Vec<usize> },
    Pending { prefixes: Vec<Vec<usize>> },
}

struct Engine<'a> {
    spec: GroupSpec,
    mode: SearchMode,
    order: Vec<usize>,
    rank: Vec<usize>,
    symmetry: bool,
    custom_order: bool,
    best_size: usize,
    witness: Vec<usize>,
    nodes: u64,
    goal: Goal,
    stop: Option<&'a AtomicBool>,
}

impl<'a> Engine<'a> {
    fn new(spec: GroupSpec, mode: SearchMode, config: &'a SearchConfig, goal: Goal) -> Result<Self> {
        let order: Vec<usize> = match &config.order {
            None => (1..spec.order()).collect(),
            Some(o) => {
                let mut sorted = o.clone();
                sorted.sort_unstable();
                ensure!(
                    sorted == (1..spec.order()).collect::<Vec<_>>(),
                    Input,
                    "branch order must be a permutation of the nonzero elements"
                );
                o.clone()
            }
        };
        let mut rank = vec![usize::MAX; spec.order()];
        for (i, &x) in order.iter().enumerate() {
            rank[x] = i;
        }
        let mut engine = Engine {
            spec,
            mode,
            order,
            rank,
            symmetry: config.symmetry,
            custom_order: config.order.is_some(),
            best_size: 0,
            witness: Vec::new(),
            nodes: 0,
            goal,
            stop: config.stop.as_deref(),
        };
        if let Some(w) = &config.initial_witness {
            let sorted = engine.sorted_by_rank(w);
            engine.sum_set(&sorted).ok_or_else(|| Error::Input("initial witness is not zero-sum-free".into()))?;
            ensure!(
                mode == SearchMode::Sequence || sorted.windows(2).all(|p| p[0] != p[1]),
                Input,
                "initial witness repeats an element"
            );
            engine.best_size = sorted.len();
            engine.witness = sorted;
        }
        Ok(engine)
    }

    fn sorted_by_rank(&self, xs: &[usize]) -> Vec<usize> {
        let mut v = xs.to_vec();
        v.sort_by_key(|&x| self.rank.get(x).copied().unwrap_or(usize::MAX));
        v
    }

    /// Sum set of a prefix, or `None` if it is not a legal node.
    fn sum_set(&self, prefix: &[usize]) -> Option<IndicatorSet> {
        let mut set = IndicatorSet::empty(self.spec);
        let mut last: Option<usize> = None;
        for &x in prefix {
            if x >= self.spec.order() || x == 0 || set.contains(self.spec.neg(x)) {
                return None;
            }
            let r = self.rank[x];
            if let Some(l) = last {
                let ok = match self.mode {
                    SearchMode::Set => r > l,
                    SearchMode::Sequence => r >= l,
                };
                if !ok {
                    return None;
                }
            } else if self.symmetry && r != 0 {
                return None;
            }
            last = Some(r);
            set = set.extend_with(x);
        }
        Some(set)
    }

    fn candidates(&self, prefix: &[usize], set: &IndicatorSet) -> Vec<usize> {
        let start = match prefix.last() {
            None => 0,
            Some(&x) => match self.mode {
                SearchMode::Set => self.rank[x] + 1,
                SearchMode::Sequence => self.rank[x],
            },
        };
        let end = if prefix.is_empty() && self.symmetry { 1.min(self.order.len()) } else { self.order.len() };
        (start..end).map(|i| self.order[i]).filter(|&x| !set.contains(self.spec.neg(x))).collect()
    }

    /// Visits one node; returns its child frame unless it is a leaf or pruned.
    fn visit(&mut self, prefix: Vec<usize>, set: IndicatorSet) -> Option<Frame> {
        self.nodes += 1;
        let len = prefix.len();
        if let Goal::Enumerate { size, found } = &mut self.goal {
            if len == *size {
                found.push(prefix);
                return None;
            }
        } else if len > self.best_size {
            self.best_size = len;
            self.witness = prefix.clone();
        }
        let candidates = self.candidates(&prefix, &set);
        // every extension adds at least one new sum, since a zero-sum-free
        // S_A closed under +x would contain px = 0
        let room = self.spec.order() - 1 - set.len();
        let reach = match self.mode {
            // at a symmetric root the single candidate is only the first of many elements
            SearchMode::Set if len == 0 && self.symmetry => room,
            SearchMode::Set => len + candidates.len().min(room),
            SearchMode::Sequence => len + room,
        };
        let worthwhile = match &self.goal {
            Goal::Maximize => reach > self.best_size,
            Goal::Enumerate { size, .. } => reach >= *size,
        };
        if !worthwhile || candidates.is_empty() {
            return None;
        }
        let mut candidates = candidates;
        candidates.reverse();
        Some(Frame::Children { prefix, set, candidates })
    }

    fn frontier(stack: &[Frame]) -> Vec<Vec<usize>> {
        let mut open = Vec::new();
        for frame in stack.iter().rev() {
            match frame {
                Frame::Children { prefix, candidates, .. } => {
                    for &c in candidates.iter().rev() {
                        let mut p = prefix.clone();
                        p.push(c);
                        open.push(p);
                    }
                }
                Frame::Pending { prefixes } => open.extend(prefixes.iter().rev().cloned()),
            }
        }
        open
    }

    fn checkpoint(&self, stack: &[Frame]) -> Checkpoint {
        Checkpoint {
            spec: self.spec,
            mode: self.mode,
            best_size: self.best_size,
            witness: self.witness.clone(),
            nodes_explored: self.nodes,
            symmetry: self.symmetry,
            order: self.custom_order.then(|| self.order.clone()),
            open: Self::frontier(stack),
        }
    }

    /// Runs until the frontier is empty, the budget is spent or a stop is
    /// requested. Returns the remaining stack.
    fn run(
        &mut self,
        mut stack: Vec<Frame>,
        budget: Option<u64>,
        every: u64,
        mut sink: Option<&mut CheckpointSink<'_>>,
    ) -> Result<Vec<Frame>> {
        let mut visited = 0u64;
        loop {
            if budget.is_some_and(|b| visited >= b) || self.stop.is_some_and(|s| s.load(Ordering::Relaxed)) {
                return Ok(stack);
            }
            let Some(top) = stack.last_mut() else {
                return Ok(stack);
            };
            let next = match top {
                Frame::Children { prefix, set, candidates } => candidates.pop().map(|c| {
                    let mut p = prefix.clone();
                    p.push(c);
                    (p, set.extend_with(c))
                }),
                Frame::Pending { prefixes } => match prefixes.pop() {
                    None => None,
                    Some(p) => {
                        let set = self
                            .sum_set(&p)
                            .ok_or_else(|| Error::Checkpoint(format!("open prefix {p:?} is not a legal search node")))?;
                        Some((p, set))
                    }
                },
            };
            match next {
                None => {
                    stack.pop();
                }
                Some((prefix, set)) => {
                    visited += 1;
                    if let Some(child) = self.visit(prefix, set) {
                        stack.push(child);
                    }
                    if every > 0 && self.nodes.is_multiple_of(every) {
                        if let Some(sink) = sink.as_deref_mut() {
                            sink(&self.checkpoint(&stack))?;
                        }
                    }
                }
            }
        }
    }
}

fn check_resume(spec: GroupSpec, mode: SearchMode, config: &SearchConfig, ck: &Checkpoint) -> Result<()> {
    if ck.spec != spec || ck.mode != mode {
        return Err(Error::Checkpoint(format!(
            "checkpoint is for F_{}^{} ({}), not F_{}^{} ({})",
            ck.spec.p(),
            ck.spec.d(),
            ck.mode.as_str(),
            spec.p(),
            spec.d(),
            mode.as_str()
        )));
    }
    if ck.symmetry != config.symmetry || ck.order != config.order {
        return Err(Error::Checkpoint("checkpoint was written with a different branch order or symmetry setting".into()));
    }
    Ok(())
}

/// Longest zero-sum-free set (`SearchMode::Set`) or sequence
/// (`SearchMode::Sequence`) in F_p^d.
///
/// With `resume`, continues exactly where the checkpoint left off; the final
/// `(best_size, nodes_explored)` match an uninterrupted run. `sink` receives a
/// checkpoint every `checkpoint_every` nodes and whenever the run stops early.
pub fn search(
    spec: GroupSpec,
    mode: SearchMode,
    config: &SearchConfig,
    resume: Option<&Checkpoint>,
    mut sink: Option<&mut CheckpointSink<'_>>,
) -> Result<SearchOutcome> {
    if config.threads > 1 {
        ensure!(
            config.budget.is_none() && resume.is_none() && sink.is_none(),
            Precondition,
            "budgets and checkpoints need a single-threaded search"
        );
        return search_parallel(spec, mode, config);
    }
    let mut engine = Engine::new(spec, mode, config, Goal::Maximize)?;
    let stack = match resume {
        None => vec![Frame::Pending { prefixes: vec![Vec::new()] }],
        Some(ck) => {
            check_resume(spec, mode, config, ck)?;
            engine.best_size = ck.best_size;
            engine.witness = ck.witness.clone();
            if engine.sum_set(&ck.witness).is_none() {
                return Err(Error::Checkpoint("checkpoint witness is not zero-sum-free".into()));
            }
            engine.nodes = ck.nodes_explored;
            let mut prefixes = ck.open.clone();
            prefixes.reverse();
            vec![Frame::Pending { prefixes }]
        }
    };
    let stack = engine.run(stack, config.budget, config.checkpoint_every, sink.as_deref_mut())?;
    let exhausted = stack.is_empty();
    let checkpoint = (!exhausted).then(|| engine.checkpoint(&stack));
    if let (Some(ck), Some(sink)) = (&checkpoint, sink) {
        sink(ck)?;
    }
    Ok(SearchOutcome {
        mode,
        best_size: engine.best_size,
        witness: engine.witness,
        exhausted,
        nodes_explored: engine.nodes,
        checkpoint,
    })
}

/// Splits the tree below the root into independent subtrees. Each subtree
/// starts from the same lower bound, so node counts do not depend on
/// scheduling; results merge by size, then by the lexicographically least
/// witness in branch order.
fn search_parallel(spec: GroupSpec, mode: SearchMode, config: &SearchConfig) -> Result<SearchOutcome> {
    let mut root = Engine::new(spec, mode, config, Goal::Maximize)?;
    let Some(Frame::Children { prefix, candidates, .. }) = root.visit(Vec::new(), IndicatorSet::empty(spec)) else {
        return Ok(SearchOutcome {
            mode,
            best_size: root.best_size,
            witness: root.witness,
            exhausted: true,
            nodes_explored: root.nodes,
            checkpoint: None,
        });
    };
    let tasks: Vec<Vec<usize>> = candidates
        .iter()
        .rev()
        .map(|&c| {
            let mut p = prefix.clone();
            p.push(c);
            p
        })
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    let results: Vec<Result<(usize, Vec<usize>, u64)>> = pool.install(|| {
        tasks
            .par_iter()
            .map(|task| {
                let mut e = Engine::new(spec, mode, config, Goal::Maximize)?;
                e.run(vec![Frame::Pending { prefixes: vec![task.clone()] }], None, 0, None)?;
                Ok((e.best_size, e.witness, e.nodes))
            })
            .collect()
    });
    let mut best = (root.best_size, root.witness.clone());
    let mut nodes = root.nodes;
    let key = |w: &[usize]| w.iter().map(|&x| root.rank[x]).collect::<Vec<_>>();
    for r in results {
        let (size, witness, n) = r?;
        nodes += n;
        if size > best.0 || (size == best.0 && key(&witness) < key(&best.1)) {
            best = (size, witness);
        }
    }
    Ok(SearchOutcome { mode, best_size: best.0, witness: best.1, exhausted: true, nodes_explored: nodes, checkpoint: None })
}

/// Every zero-sum-free set of exactly `size` elements (respecting the
/// symmetry setting: with it on, only sets whose first element is the first
/// nonzero element of the branch order).
pub fn enumerate_sets(spec: GroupSpec, size: usize, config: &SearchConfig) -> Result<Enumeration> {
    let mut engine = Engine::new(spec, SearchMode::Set, config, Goal::Enumerate { size, found: Vec::new() })?;
    let stack = engine.run(vec![Frame::Pending { prefixes: vec![Vec::new()] }], config.budget, 0, None)?;
    let Goal::Enumerate { found, .. } = engine.goal else { unreachable!() };
    Ok(Enumeration { sets: found, exhausted: stack.is_empty(), nodes_explored: engine.nodes })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(p: u64, d: u32, mode: SearchMode, symmetry: bool) -> SearchOutcome {
        let spec = GroupSpec::new(p, d).unwrap();
        let mut cfg = SearchConfig::for_spec(spec);
        cfg.symmetry = symmetry;
        search(spec, mode, &cfg, None, None).unwrap()
    }

    #[test]
    fn small_olson_values() {
        for (p, size) in [(2, 1), (3, 1), (5, 2), (7, 3)] {
            for sym in [false, true] {
                let out = run(p, 1, SearchMode::Set, sym);
                assert!(out.exhausted);
                assert_eq!(out.best_size, size, "p={p} symmetry={sym}");
            }
        }
    }

    #[test]
    fn small_davenport_values() {
        for (p, d) in [(3, 1), (5, 1), (2, 3), (3, 2)] {
            let out = run(p, d, SearchMode::Sequence, false);
            assert!(out.exhausted);
            assert_eq!(out.best_size, d as usize * (p as usize - 1), "p={p} d={d}");
        }
    }

    #[test]
    fn witness_is_lexicographically_least() {
        let out = run(7, 1, SearchMode::Set, false);
        let spec = GroupSpec::new(7, 1).unwrap();
        let mut best: Option<Vec<usize>> = None;
        for mask in 1u32..(1 << 6) {
            let set: Vec<usize> = (1..7).filter(|x| mask >> (x - 1) & 1 == 1).collect();
            let seq = crate::sumset::ElementSequence::from_indices(spec, set.iter().copied()).unwrap();
            if crate::sumset::is_zero_sum_free(&seq) {
                let better = match &best {
                    None => true,
                    Some(b) => set.len() > b.len() || (set.len() == b.len() && set < *b),
                };
                if better {
                    best = Some(set);
                }
            }
        }
        assert_eq!(Some(out.witness), best);
    }

    #[test]
    fn parallel_matches_sequential() {
        let spec = GroupSpec::new(3, 2).unwrap();
        let mut cfg = SearchConfig::for_spec(spec);
        let seq = search(spec, SearchMode::Set, &cfg, None, None).unwrap();
        cfg.threads = 3;
        let par = search(spec, SearchMode::Set, &cfg, None, None).unwrap();
        assert_eq!((seq.best_size, &seq.witness), (par.best_size, &par.witness));
        let again = search(spec, SearchMode::Set, &cfg, None, None).unwrap();
        assert_eq!(par, again);
    }

    #[test]
    fn budget_and_resume() {
        let spec = GroupSpec::new(3, 2).unwrap();
        let cfg = SearchConfig::for_spec(spec);
        let full = search(spec, SearchMode::Sequence, &cfg, None, None).unwrap();
        for cut in [1, 2, 5, 17, full.nodes_explored - 1] {
            let mut partial_cfg = cfg.clone();
            partial_cfg.budget = Some(cut);
            let part = search(spec, SearchMode::Sequence, &partial_cfg, None, None).unwrap();
            assert!(!part.exhausted);
            let ck = Checkpoint::parse(&part.checkpoint.unwrap().to_text()).unwrap();
            let rest = search(spec, SearchMode::Sequence, &cfg, Some(&ck), None).unwrap();
            assert!(rest.exhausted);
            assert_eq!((rest.best_size, rest.nodes_explored, &rest.witness), (full.best_size, full.nodes_explored, &full.witness));
        }
    }

    #[test]
    fn resume_rejects_mismatched_spec() {
        let spec = GroupSpec::new(3, 2).unwrap();
        let mut cfg = SearchConfig::for_spec(spec);
        cfg.budget = Some(3);
        let ck = search(spec, SearchMode::Set, &cfg, None, None).unwrap().checkpoint.unwrap();
        let other = GroupSpec::new(5, 2).unwrap();
        let err = search(other, SearchMode::Set, &SearchConfig::for_spec(other), Some(&ck), None).unwrap_err();
        assert!(matches!(err, Error::Checkpoint(_)));
    }

    #[test]
    fn enumeration_counts() {
        // zero-sum-free 2-subsets of F_5: pairs {a,b} with a+b ≠ 0: C(4,2) - 2 = 4
        let spec = GroupSpec::new(5, 1).unwrap();
        let mut cfg = SearchConfig::for_spec(spec);
        cfg.symmetry = false;
        let e = enumerate_sets(spec, 2, &cfg).unwrap();
        assert!(e.exhausted);
        assert_eq!(e.sets, vec![vec![1, 2], vec![1, 3], vec![2, 4], vec![3, 4]]);
    }
}
