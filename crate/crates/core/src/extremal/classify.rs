//! Maximum zero-sum-free sets of F_p^2 up to invertible linear maps.

use std::collections::HashSet;

use serde::Serialize;

use super::Variant;
use crate::constants::{enumerate_sets, search, SearchConfig, SearchMode};
use crate::error::{ensure, Result};
use crate::group::{general_linear_group, GroupSpec};
use crate::sumset::{is_zero_sum_free, ElementSequence};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitClass {
    /// Lexicographically least image of the orbit, sorted indices.
    pub representative: Vec<usize>,
    /// Number of distinct sets in the orbit.
    pub orbit_size: usize,
    /// Variants whose shape some image of the representative has.
    pub matches: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub p: u32,
    pub max_size: usize,
    /// `p + OL(F_p) - 2`.
    pub predicted_size: usize,
    pub classes: Vec<OrbitClass>,
    /// Sum of orbit sizes: the number of maximum zero-sum-free sets.
    pub total_sets: usize,
    /// The enumeration finished within the budget.
    pub complete: bool,
    pub deviations: Vec<String>,
}

/// Counts per vertical line `x = c`.
fn column_counts(spec: GroupSpec, set: &[usize]) -> Vec<usize> {
    let p = spec.p() as usize;
    let mut counts = vec![0usize; p];
    for &x in set {
        counts[x % p] += 1;
    }
    counts
}

fn shape_of(spec: GroupSpec, set: &[usize], ol_p: usize) -> Option<Variant> {
    let c = column_counts(spec, set);
    let p = spec.p() as usize;
    let rest = |skip: &[usize]| c.iter().enumerate().filter(|(i, _)| !skip.contains(i)).all(|(_, &k)| k == 0);
    if c[0] == ol_p - 1 && c[1] == p - 1 && rest(&[0, 1]) {
        Some(Variant::LinePair)
    } else if p > 2 && c[0] == ol_p - 1 && c[1] == p - 2 && c[2] == 1 && rest(&[0, 1, 2]) {
        Some(Variant::LinePairAndPoint)
    } else {
        None
    }
}

/// Enumerates every maximum zero-sum-free subset of F_p^2 containing the
/// point `(1, 0)` (every orbit meets one), buckets them into orbits under
/// GL(2, p) by lexicographically least image, and reports which orbits
/// have the shape of either optimal variant.
pub fn classify_max_zero_sum_free_f_p2(p: u32, budget: Option<u64>) -> Result<Classification> {
    ensure!(p >= 3, Domain, "p = {p} is out of theorem scope: the classification concerns odd primes");
    let spec = GroupSpec::new(p as u64, 2)?;
    let line = GroupSpec::new(p as u64, 1)?;
    let ol_p = search(line, SearchMode::Set, &SearchConfig::for_spec(line), None, None)?.best_size + 1;
    let mut config = SearchConfig::for_spec(spec);
    config.budget = budget;
    let max = search(spec, SearchMode::Set, &config, None, None)?;
    let mut deviations = Vec::new();
    let predicted = p as usize + ol_p - 2;
    config.symmetry = true;
    let sets = enumerate_sets(spec, max.best_size, &config)?;
    let complete = max.exhausted && sets.exhausted;
    if max.best_size != predicted {
        deviations.push(format!("largest zero-sum-free set has {} elements, p + OL(F_p) - 2 = {predicted}", max.best_size));
    }

    let maps: Vec<Vec<usize>> = general_linear_group(spec)?.iter().map(|m| m.table()).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut classes = Vec::new();
    for set in &sets.sets {
        let mut key = set.clone();
        key.sort_unstable();
        if seen.contains(&key) {
            continue;
        }
        ensure!(
            is_zero_sum_free(&ElementSequence::from_indices(spec, key.iter().copied())?),
            Internal,
            "enumerated set {key:?} is not zero-sum-free"
        );
        let mut orbit: HashSet<Vec<usize>> = HashSet::new();
        let mut matches = Vec::new();
        for table in &maps {
            let mut image: Vec<usize> = key.iter().map(|&x| table[x]).collect();
            image.sort_unstable();
            if let Some(v) = shape_of(spec, &image, ol_p) {
                if !matches.contains(&v.number()) {
                    matches.push(v.number());
                }
            }
            orbit.insert(image);
        }
        matches.sort_unstable();
        let representative = orbit.iter().min().cloned().expect("the identity map is in the group");
        if matches.is_empty() {
            deviations.push(format!("orbit of {representative:?} matches neither variant"));
        } else if matches.len() == 2 {
            deviations.push(format!("orbit of {representative:?} matches both variants"));
        }
        classes.push(OrbitClass { representative, orbit_size: orbit.len(), matches });
        seen.extend(orbit);
    }
    classes.sort_by(|a, b| a.representative.cmp(&b.representative));
    if !complete {
        deviations.push("budget exhausted: the classification is partial".into());
    }
    Ok(Classification {
        p,
        max_size: max.best_size,
        predicted_size: predicted,
        total_sets: classes.iter().map(|c| c.orbit_size).sum(),
        classes,
        complete,
        deviations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p3_classification() {
        let c = classify_max_zero_sum_free_f_p2(3, None).unwrap();
        assert!(c.complete);
        assert_eq!(c.max_size, 3);
        assert!(!c.classes.is_empty());
    }

    #[test]
    fn orbits_partition_the_maximum_sets() {
        // brute force over all 6-subsets of F_5^2 would be C(24,6); count through the orbits instead
        let c = classify_max_zero_sum_free_f_p2(5, None).unwrap();
        assert!(c.complete);
        let spec = GroupSpec::new(5, 2).unwrap();
        let mut cfg = SearchConfig::for_spec(spec);
        cfg.symmetry = false;
        let all = enumerate_sets(spec, c.max_size, &cfg).unwrap();
        assert_eq!(all.sets.len(), c.total_sets);
    }

    #[test]
    fn p5_findings() {
        let c = classify_max_zero_sum_free_f_p2(5, None).unwrap();
        assert_eq!(c.max_size, c.predicted_size);
        assert_eq!(c.classes.len(), 4);
        let unmatched: Vec<_> = c.classes.iter().filter(|k| k.matches.is_empty()).collect();
        assert_eq!(unmatched.len(), 1);
        assert_eq!(unmatched[0].representative, vec![1, 2, 5, 7, 12, 19]);
    }

    #[test]
    fn class_keys_are_invariant_under_composed_maps() {
        use rand::{Rng, SeedableRng};
        let spec = GroupSpec::new(5, 2).unwrap();
        let maps: Vec<Vec<usize>> = general_linear_group(spec).unwrap().iter().map(|m| m.table()).collect();
        let key = |set: &[usize]| {
            maps.iter()
                .map(|t| {
                    let mut v: Vec<usize> = set.iter().map(|&x| t[x]).collect();
                    v.sort_unstable();
                    v
                })
                .min()
                .unwrap()
        };
        let c = classify_max_zero_sum_free_f_p2(5, None).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for class in &c.classes {
            for _ in 0..20 {
                let (f, g) = (&maps[rng.gen_range(0..maps.len())], &maps[rng.gen_range(0..maps.len())]);
                let image: Vec<usize> = class.representative.iter().map(|&x| g[f[x]]).collect();
                assert_eq!(key(&image), class.representative);
            }
        }
    }

    #[test]
    fn p2_is_out_of_scope() {
        let err = classify_max_zero_sum_free_f_p2(2, None).unwrap_err();
        assert!(err.to_string().contains("out of theorem scope"));
    }
}
