//! Subsequence sums `S_A` and restricted sumsets `m*A` by dynamic programming.

use super::{ElementSequence, IndicatorSet};
use crate::error::{ensure, Result};

/// `S_A`: sums of all nonempty subsequences.
///
/// Each entry `(a, k)` is folded in one copy at a time: `R ← R ∪ (R + a) ∪ {a}`.
pub fn subsums_all(seq: &ElementSequence) -> IndicatorSet {
    let spec = seq.spec();
    let mut reach = IndicatorSet::empty(spec);
    for &(a, k) in seq.entries() {
        for _ in 0..k {
            if reach.is_full() {
                return reach;
            }
            let before = reach.len();
            reach = reach.extend_with(a);
            if reach.len() == before {
                // R is closed under +a, so further copies add nothing
                break;
            }
        }
    }
    reach
}

/// `m*A`: sums of subsequences with exactly `m` elements.
pub fn subsums_exact(seq: &ElementSequence, m: usize) -> Result<IndicatorSet> {
    ensure!(m >= 1 && m <= seq.len(), Input, "m = {m} is outside 1..={}", seq.len());
    Ok(subsums_layers(seq, m).pop().expect("m + 1 layers"))
}

/// Layers `0*A, 1*A, …, max_m*A` of the exact-cardinality recursion.
///
/// Layer `t` holds the sums of exactly `t` elements. Layers that can no longer
/// reach `max_m` with the elements still to come are skipped, which changes
/// nothing in the last layer but leaves the lower ones incomplete; use
/// [`subsums_all_layers`] when every layer is needed.
pub fn subsums_layers(seq: &ElementSequence, max_m: usize) -> Vec<IndicatorSet> {
    layers_impl(seq, max_m, true)
}

/// Every layer `t*A` for `0 ≤ t ≤ max_m`, each exact.
pub fn subsums_all_layers(seq: &ElementSequence, max_m: usize) -> Vec<IndicatorSet> {
    layers_impl(seq, max_m, false)
}

fn layers_impl(seq: &ElementSequence, max_m: usize, target_only: bool) -> Vec<IndicatorSet> {
    let spec = seq.spec();
    let max_m = max_m.min(seq.len());
    let mut layers = vec![IndicatorSet::empty(spec); max_m + 1];
    layers[0].insert(0);
    let mut used = 0usize;
    let mut remaining = seq.len();
    for a in seq.iter() {
        remaining -= 1;
        used += 1;
        let top = used.min(max_m);
        let floor = if target_only { max_m.saturating_sub(remaining).max(1) } else { 1 };
        for t in (floor..=top).rev() {
            let (lower, upper) = layers.split_at_mut(t);
            lower[t - 1].translate_or_into(a, &mut upper[0]);
        }
    }
    layers
}

/// `0 ∉ S_A`. The empty sequence is zero-sum-free.
pub fn is_zero_sum_free(seq: &ElementSequence) -> bool {
    let mut reach = IndicatorSet::empty(seq.spec());
    for a in seq.iter() {
        if a == 0 || reach.contains(seq.spec().neg(a)) {
            return false;
        }
        reach = reach.extend_with(a);
    }
    true
}

/// `0 ∉ m*A`.
pub fn is_m_zero_sum_free(seq: &ElementSequence, m: usize) -> Result<bool> {
    Ok(!subsums_exact(seq, m)?.contains(0))
}

/// `S_A ≠ F_p^d`.
pub fn is_incomplete(seq: &ElementSequence) -> bool {
    !subsums_all(seq).is_full()
}

/// `m*A ≠ F_p^d`.
pub fn is_m_incomplete(seq: &ElementSequence, m: usize) -> Result<bool> {
    Ok(!subsums_exact(seq, m)?.is_full())
}

/// Smallest `m ≤ max_m` with `m*A = F_p^d`, if any.
pub fn first_complete_layer(seq: &ElementSequence, max_m: usize) -> Option<usize> {
    if seq.is_empty() {
        return None;
    }
    subsums_all_layers(seq, max_m).iter().enumerate().skip(1).find(|(_, l)| l.is_full()).map(|(m, _)| m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    fn seq(p: u64, d: u32, xs: &[usize]) -> ElementSequence {
        ElementSequence::from_indices(GroupSpec::new(p, d).unwrap(), xs.iter().copied()).unwrap()
    }

    #[test]
    fn subsums_all_examples() {
        assert_eq!(subsums_all(&seq(5, 1, &[0])).to_vec(), vec![0]);
        assert_eq!(subsums_all(&seq(5, 1, &[1, 2])).to_vec(), vec![1, 2, 3]);
        let s7 = GroupSpec::new(7, 1).unwrap();
        let ones = ElementSequence::from_pairs(s7, [(1, 6)]).unwrap();
        assert_eq!(subsums_all(&ones).to_vec(), (1..7).collect::<Vec<_>>());
        assert!(subsums_all(&ElementSequence::new(s7)).is_empty());
    }

    #[test]
    fn subsums_exact_examples() {
        let a = seq(7, 1, &[1, 2, 3]);
        assert_eq!(subsums_exact(&a, 2).unwrap().to_vec(), vec![3, 4, 5]);
        assert_eq!(subsums_exact(&a, 3).unwrap().to_vec(), vec![6]);
        assert!(subsums_exact(&a, 0).is_err());
        assert!(subsums_exact(&a, 4).is_err());
        // |A| ≥ 2√p + 1 forces ⌊√p⌋*A = F_p at p = 101
        let b = seq(101, 1, &(0..21).collect::<Vec<_>>());
        assert!(subsums_exact(&b, 10).unwrap().is_full());
    }

    #[test]
    fn predicates() {
        assert!(!is_zero_sum_free(&seq(5, 1, &[0])));
        assert!(is_zero_sum_free(&seq(5, 1, &[1, 2])));
        assert!(!is_zero_sum_free(&seq(3, 1, &[1, 2])));
        assert!(is_zero_sum_free(&ElementSequence::new(GroupSpec::new(3, 1).unwrap())));
        assert!(is_incomplete(&seq(2, 1, &[1])));
        assert!(!is_incomplete(&seq(3, 1, &[0, 1, 2])));
        // a line translate in F_5^2: every m-sum stays on a translate of the line
        let s = GroupSpec::new(5, 2).unwrap();
        let line = ElementSequence::from_indices(s, (0..5).map(|y| s.encode(&[1, y]).unwrap())).unwrap();
        assert!(is_m_incomplete(&line, 3).unwrap());
    }

    #[test]
    fn layers_are_consistent() {
        let a = seq(7, 1, &[1, 1, 2, 5, 6]);
        let all = subsums_all_layers(&a, 5);
        for m in 1..=5 {
            assert_eq!(all[m], subsums_exact(&a, m).unwrap(), "m = {m}");
        }
        assert_eq!(first_complete_layer(&a, 5), all.iter().position(|l| l.is_full()));
    }
}
