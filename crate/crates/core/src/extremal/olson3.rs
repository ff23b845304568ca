//! OL(F_p^3) against the `(2+γ)p` bound and the conjectured `p + OL(F_p^2) - 1`.

use serde::Serialize;

use super::construct_stacked;
use crate::constants::{olson_constant, ConstantResult, SearchConfig};
use crate::error::{ensure, Result};
use crate::group::GroupSpec;
use crate::sumset::ElementSequence;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Olson3Report {
    pub p: u32,
    pub gamma: f64,
    pub plane: ConstantResult,
    pub space: ConstantResult,
    /// Size of the stacked zero-sum-free set built from the plane witness.
    pub stacked_size: usize,
    /// `(2 + γ) p`.
    pub theorem_bound: f64,
    /// `p + OL(F_p^2) - 1`, when `OL(F_p^2)` is exact.
    pub conjectured: Option<usize>,
    /// Computed `OL(F_p^3)` (or its lower bound) is at most `(2+γ)p`.
    pub within_bound: Option<bool>,
    pub matches_conjecture: Option<bool>,
}

/// Computes OL(F_p^2) and OL(F_p^3) within `budget` nodes each. The space
/// search starts from the stacked construction, so a cut-short run still
/// certifies `OL(F_p^3) ≥ p + OL(F_p^2) - 1` once the plane value is exact.
pub fn olson3_experiment(p: u32, gamma: f64, budget: Option<u64>) -> Result<Olson3Report> {
    ensure!(gamma > 0.0, Input, "gamma must be positive, got {gamma}");
    let plane_spec = GroupSpec::new(p as u64, 2)?;
    let space_spec = GroupSpec::new(p as u64, 3)?;
    let mut cfg = SearchConfig::for_spec(plane_spec);
    cfg.budget = budget;
    let plane = olson_constant(plane_spec, &cfg, None, None)?;
    let witness = ElementSequence::from_indices(plane_spec, plane.witness.iter().copied())?;
    let stacked = construct_stacked(p, 3, &witness)?;
    let mut cfg3 = SearchConfig::for_spec(space_spec);
    cfg3.budget = budget;
    cfg3.initial_witness = Some(stacked.to_vec());
    let space = olson_constant(space_spec, &cfg3, None, None)?;
    let theorem_bound = (2.0 + gamma) * p as f64;
    let conjectured = plane.value().map(|v| p as usize + v - 1);
    Ok(Olson3Report {
        p,
        gamma,
        stacked_size: stacked.len(),
        theorem_bound,
        within_bound: space.value().map(|v| v as f64 <= theorem_bound),
        matches_conjecture: space.value().zip(conjectured).map(|(v, c)| v == c),
        conjectured,
        plane,
        space,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p3_is_exact() {
        let r = olson3_experiment(3, 1.0, None).unwrap();
        assert_eq!(r.plane.value(), Some(4));
        assert_eq!(r.conjectured, Some(6));
        let v = r.space.value().unwrap();
        assert!(v >= r.stacked_size + 1);
        assert_eq!(r.within_bound, Some(v as f64 <= 9.0));
    }

    #[test]
    fn budgeted_run_keeps_the_stacked_bound() {
        let r = olson3_experiment(5, 0.5, Some(20_000)).unwrap();
        assert!(r.space.lower >= r.stacked_size + 1);
        assert_eq!(r.stacked_size, 10);
    }
}
