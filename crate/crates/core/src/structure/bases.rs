//! Disjoint affine bases and the round-by-round growth of a sumset past half
//! the group.

use crate::error::{ensure, Result};
use crate::group::{AffineFlat, Subspace};
use crate::sumset::{growth_step, ElementSequence, GrowthOutcome, IndicatorSet};

/// Greedily pulls up to `count` disjoint affine bases out of `seq`.
///
/// Each basis starts at the smallest remaining element and takes, in
/// canonical order, every element whose difference with the start is
/// independent of the differences taken so far. When that scan stops short of
/// `d + 1` points, the remaining elements lie in a proper affine subspace and
/// contain no affine basis at all.
pub fn extract_disjoint_affine_bases(seq: &ElementSequence, count: usize) -> (Vec<Vec<usize>>, ElementSequence) {
    let spec = seq.spec();
    let d = spec.d();
    let mut rest = seq.clone();
    let mut bases = Vec::new();
    while bases.len() < count && !rest.is_empty() {
        let mut basis: Vec<usize> = Vec::with_capacity(d + 1);
        let mut diffs: Vec<usize> = Vec::with_capacity(d);
        let mut span = Subspace::zero(spec);
        for x in rest.distinct() {
            match basis.first() {
                None => basis.push(x),
                Some(&origin) => {
                    let v = spec.sub(x, origin);
                    if !span.contains_index(v) {
                        diffs.push(v);
                        span = Subspace::span_indices(spec, &diffs);
                        basis.push(x);
                    }
                }
            }
            if basis.len() == d + 1 {
                break;
            }
        }
        if basis.len() < d + 1 {
            break;
        }
        for &x in &basis {
            rest.remove(x, 1).expect("basis points come from the sequence");
        }
        bases.push(basis);
    }
    (bases, rest)
}

/// Why [`grow_to_half_space`] stopped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GrowStop {
    /// `|grown| > p^d / 2`.
    HalfSpace,
    /// Fewer than two pool elements remain.
    PoolExhausted,
    StepCap,
    /// No pool element grows the set enough; this hyperplane holds `count`
    /// of the remaining pool elements.
    Concentrated { flat: AffineFlat, count: usize },
}

#[derive(Debug, Clone)]
pub struct GrowReport {
    pub grown: IndicatorSet,
    /// Consumed pool elements, two per round: `a'` then `a`.
    pub used: Vec<usize>,
    /// `|grown|` before the first round and after each round.
    pub sizes: Vec<usize>,
    pub stop: GrowStop,
}

impl GrowReport {
    pub fn rounds(&self) -> usize {
        self.used.len() / 2
    }
}

/// Replaces `Y` by `(a' + Y) ∪ (a + Y)` round after round, where `a'` is the
/// smallest remaining pool element and `a` the element chosen by
/// [`growth_step`], until `Y` exceeds half the group.
///
/// After `k` rounds every point of `grown` is `y + (sum of k used elements,
/// one from each round)` for some `y` in the seed.
pub fn grow_to_half_space(seed: &IndicatorSet, pool: &ElementSequence, w: f64, step_cap: usize) -> Result<GrowReport> {
    let spec = seed.spec();
    ensure!(!seed.is_empty(), Precondition, "the seed set is empty");
    ensure!(pool.spec() == spec, Input, "seed and pool live in different groups");
    let mut grown = seed.clone();
    let mut rest = pool.clone();
    let mut used = Vec::new();
    let mut sizes = vec![grown.len()];
    let stop = loop {
        if 2 * grown.len() > spec.order() {
            break GrowStop::HalfSpace;
        }
        if used.len() / 2 >= step_cap {
            break GrowStop::StepCap;
        }
        if rest.len() < 2 {
            break GrowStop::PoolExhausted;
        }
        let a_prev = rest.entries()[0].0;
        match growth_step(&rest, &grown, a_prev, w)? {
            GrowthOutcome::Concentrated { flat, count } => break GrowStop::Concentrated { flat, count },
            GrowthOutcome::Growth { element, .. } => {
                let mut next = grown.translated(a_prev);
                grown.translate_or_into(element, &mut next);
                grown = next;
                rest.remove(a_prev, 1)?;
                rest.remove(element, 1)?;
                used.push(a_prev);
                used.push(element);
                sizes.push(grown.len());
            }
        }
    };
    Ok(GrowReport { grown, used, sizes, stop })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{is_affine_basis, GroupSpec};
    use crate::sumset::{growth_threshold, sumset};

    #[test]
    fn bases_in_a_hyperplane() {
        let spec = GroupSpec::new(5, 2).unwrap();
        let line: Vec<usize> = (0..5).map(|x| spec.encode(&[x, 2]).unwrap()).collect();
        let seq = ElementSequence::from_indices(spec, line.iter().copied().chain(line.iter().copied())).unwrap();
        let (bases, rest) = extract_disjoint_affine_bases(&seq, 4);
        assert!(bases.is_empty());
        assert_eq!(rest, seq);
    }

    #[test]
    fn bases_of_the_whole_plane() {
        let spec = GroupSpec::new(3, 2).unwrap();
        let seq = ElementSequence::from_indices(spec, spec.indices()).unwrap();
        let (bases, rest) = extract_disjoint_affine_bases(&seq, 1);
        assert_eq!(bases, vec![vec![0, 1, 3]]);
        assert_eq!(rest.len(), 6);
        let pts: Vec<_> = bases[0].iter().map(|&i| spec.element_at(i)).collect();
        assert!(is_affine_basis(spec, &pts).unwrap());
    }

    #[test]
    fn two_copies_of_a_triangle() {
        let spec = GroupSpec::new(5, 2).unwrap();
        let tri = [0, 1, 5];
        let seq = ElementSequence::from_indices(spec, tri.iter().chain(tri.iter()).copied()).unwrap();
        let (bases, rest) = extract_disjoint_affine_bases(&seq, 2);
        assert_eq!(bases, vec![vec![0, 1, 5], vec![0, 1, 5]]);
        assert!(rest.is_empty());
    }

    #[test]
    fn growth_from_a_basis_sumset() {
        let spec = GroupSpec::new(3, 2).unwrap();
        let basis = IndicatorSet::from_indices(spec, [0, 1, 3]).unwrap();
        let pool = ElementSequence::from_indices(spec, [1, 2, 3, 4, 5, 6, 7, 8]).unwrap();
        let report = grow_to_half_space(&basis, &pool, 1.0, 10).unwrap();
        assert_eq!(report.stop, GrowStop::HalfSpace);
        assert!(report.grown.len() > 4);
        for (i, pair) in report.used.chunks(2).enumerate() {
            let before = report.sizes[i];
            assert!(report.sizes[i + 1] >= before + growth_threshold(before, 3, 1.0));
            assert_ne!(pair[0], pair[1]);
        }
        // every grown point is a seed point plus one used element per round
        let mut reach = basis.clone();
        for pair in report.used.chunks(2) {
            let step = IndicatorSet::from_indices(spec, pair.iter().copied()).unwrap();
            reach = sumset(&reach, &step).unwrap();
        }
        assert!(report.grown.is_subset(&reach));
    }

    #[test]
    fn seed_past_half_is_returned_as_is() {
        let spec = GroupSpec::new(3, 2).unwrap();
        let seed = IndicatorSet::from_indices(spec, 0..5).unwrap();
        let pool = ElementSequence::from_indices(spec, [1, 2]).unwrap();
        let report = grow_to_half_space(&seed, &pool, 1.0, 10).unwrap();
        assert_eq!(report.stop, GrowStop::HalfSpace);
        assert!(report.used.is_empty());
        assert_eq!(report.grown, seed);
    }

    #[test]
    fn constant_pool_concentrates() {
        let spec = GroupSpec::new(5, 2).unwrap();
        let seed = IndicatorSet::from_indices(spec, [0, 1, 5]).unwrap();
        let pool = ElementSequence::from_pairs(spec, [(7, 6)]).unwrap();
        let report = grow_to_half_space(&seed, &pool, 1.0, 10).unwrap();
        assert!(matches!(report.stop, GrowStop::Concentrated { count: 6, .. }));
        assert!(report.used.is_empty());
    }
}
