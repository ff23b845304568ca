//! Extremal zero-sum-free configurations: the two optimal shapes in F_p^2,
//! the stacked lower-bound construction, classification of maximum sets up
//! to linear equivalence, the adding-lines fact, and OL(F_p^3) experiments.

mod classify;
mod olson3;

pub use classify::{classify_max_zero_sum_free_f_p2, Classification, OrbitClass};
pub use olson3::{olson3_experiment, Olson3Report};

use serde::Serialize;

use crate::constants::{search, SearchConfig, SearchMode};
use crate::error::{ensure, Error, Result};
use crate::group::GroupSpec;
use crate::sumset::{is_zero_sum_free, sumset, ElementSequence, IndicatorSet};

/// Which of the two optimal shapes in F_p^2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Variant {
    /// `OL(F_p) - 1` points on `x = 0`, `p - 1` on `x = 1`.
    LinePair,
    /// `OL(F_p) - 1` points on `x = 0`, `p - 2` on `x = 1`, one on `x = 2`.
    LinePairAndPoint,
}

impl Variant {
    pub fn number(self) -> u8 {
        match self {
            Variant::LinePair => 1,
            Variant::LinePairAndPoint => 2,
        }
    }

    pub fn from_number(n: u8) -> Option<Self> {
        match n {
            1 => Some(Variant::LinePair),
            2 => Some(Variant::LinePairAndPoint),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Construction {
    pub p: u32,
    pub variant: Variant,
    /// Points as indices of F_p^2, `(x, y) ↦ x + p·y`.
    pub set: Vec<usize>,
    pub size: usize,
    pub verified: bool,
    /// Variant 2: whether the default choice of points (`x = 1` minus
    /// `y ∈ {0, p-1}`, the point `(2, 0)`) is zero-sum-free without extra care.
    pub default_choice_zero_sum_free: Option<bool>,
    /// Variant 2: whether `B ∪ {s}` is zero-sum-free in F_p for the returned
    /// set, where `B` is the `y`-content of `x = 0` and `s` the `y`-sum of the
    /// other points.
    pub side_condition: Option<bool>,
    pub deviations: Vec<String>,
}

fn line_witness(p: u32, ol_p: usize) -> Result<Vec<usize>> {
    let line = GroupSpec::new(p as u64, 1)?;
    let out = search(line, SearchMode::Set, &SearchConfig::for_spec(line), None, None)?;
    ensure!(
        out.best_size + 1 == ol_p,
        Precondition,
        "inconsistent OL(F_{p}) = {ol_p}: the largest zero-sum-free set of F_{p} has {} elements",
        out.best_size
    );
    Ok(out.witness)
}

fn point(spec: GroupSpec, x: u32, y: u32) -> usize {
    spec.encode(&[x % spec.p(), y % spec.p()]).expect("residues")
}

/// Builds one of the two optimal zero-sum-free shapes of size `p + OL(F_p) - 2`
/// in F_p^2 and verifies it exactly. `ol_p` must be `OL(F_p)`.
///
/// Variant 2 is zero-sum-free exactly when the side condition holds, so the
/// missing `y` on `x = 1` and the point on `x = 2` are searched in
/// lexicographic order for a choice that satisfies it.
pub fn construct_grt_config(p: u32, variant: Variant, ol_p: usize) -> Result<Construction> {
    ensure!(p >= 3, Domain, "the constructions need an odd prime, got p = {p}");
    let spec = GroupSpec::new(p as u64, 2)?;
    let line = GroupSpec::new(p as u64, 1)?;
    let base = line_witness(p, ol_p)?;
    let axis: Vec<usize> = base.iter().map(|&y| point(spec, 0, y as u32)).collect();
    let mut deviations = Vec::new();
    let (set, default_ok, side) = match variant {
        Variant::LinePair => {
            let mut set = axis.clone();
            set.extend((1..p).map(|y| point(spec, 1, y)));
            (set, None, None)
        }
        Variant::LinePairAndPoint => {
            let build = |missing: u32, y2: u32| {
                let mut set = axis.clone();
                set.extend((1..p).filter(|&y| y != missing).map(|y| point(spec, 1, y)));
                set.push(point(spec, 2, y2));
                set
            };
            let side_holds = |missing: u32, y2: u32| -> Result<bool> {
                let s = ((1..p).filter(|&y| y != missing).map(u64::from).sum::<u64>() + y2 as u64) % p as u64;
                let seq = ElementSequence::from_indices(line, base.iter().copied().chain([s as usize]))?;
                Ok(is_zero_sum_free(&seq))
            };
            let default_set = build(p - 1, 0);
            let default_ok = is_zero_sum_free(&ElementSequence::from_indices(spec, default_set.iter().copied())?);
            let mut chosen = None;
            'outer: for missing in 1..p {
                for y2 in 0..p {
                    if side_holds(missing, y2)? {
                        chosen = Some((missing, y2));
                        break 'outer;
                    }
                }
            }
            match chosen {
                Some((missing, y2)) => (build(missing, y2), Some(default_ok), Some(true)),
                None => {
                    deviations.push(format!("no choice of points satisfies the side condition at p = {p}"));
                    (default_set, Some(default_ok), Some(false))
                }
            }
        }
    };
    let seq = ElementSequence::from_indices(spec, set.iter().copied())?;
    let distinct = seq.distinct_len() == seq.len();
    let verified = distinct && is_zero_sum_free(&seq);
    let expected = p as usize + ol_p - 2;
    if set.len() != expected {
        deviations.push(format!("size {} differs from p + OL(F_p) - 2 = {expected}", set.len()));
    }
    if !verified {
        if variant == Variant::LinePair {
            return Err(Error::Precondition(format!("variant 1 at p = {p} failed verification")));
        }
        deviations.push(format!("variant 2 at p = {p} is not zero-sum-free"));
    }
    let mut sorted = set;
    sorted.sort_unstable();
    Ok(Construction {
        p,
        variant,
        size: sorted.len(),
        set: sorted,
        verified,
        default_choice_zero_sum_free: default_ok,
        side_condition: side,
        deviations,
    })
}

/// A zero-sum-free set of F_p^d from one of F_p^{d-1}: the lower witness on
/// `x_d = 0` plus the first `p - 1` points of `x_d = 1` in index order. Any
/// nonempty subset sum with `k` points on `x_d = 1` has last coordinate
/// `k ≢ 0`, or lies in the lower witness.
pub fn construct_stacked(p: u32, d: u32, lower_witness: &ElementSequence) -> Result<ElementSequence> {
    ensure!(d >= 2, Domain, "the stacked construction needs d >= 2, got d = {d}");
    let spec = GroupSpec::new(p as u64, d)?;
    let lower = lower_witness.spec();
    ensure!(
        lower.p() == p && lower.d() + 1 == d as usize,
        Input,
        "the lower witness lives in F_{}^{}, expected F_{p}^{}",
        lower.p(),
        lower.d(),
        d - 1
    );
    ensure!(lower_witness.distinct_len() == lower_witness.len(), Precondition, "the lower witness repeats an element");
    ensure!(is_zero_sum_free(lower_witness), Precondition, "the lower witness is not zero-sum-free");
    let top = lower.order();
    let mut out = ElementSequence::new(spec);
    for x in lower_witness.iter() {
        out.push(x, 1);
    }
    for j in 0..(p as usize - 1) {
        out.push(top + j, 1);
    }
    if !is_zero_sum_free(&out) {
        return Err(Error::Precondition("stacked construction failed verification".into()));
    }
    Ok(out)
}

/// Whether `B1 + B2` contains the whole `y`-axis, for `B1` on the line `x = b`
/// and `B2` on `x = p - b` of F_p^2. Always true once `|B1| + |B2| > p`.
pub fn check_adding_lines(spec: GroupSpec, b: u32, b1: &[usize], b2: &[usize]) -> Result<bool> {
    ensure!(spec.d() == 2, Domain, "adding lines lives in F_p^2, got d = {}", spec.d());
    let p = spec.p();
    ensure!(!b.is_multiple_of(p), Input, "b must be nonzero mod p");
    let on = |set: &[usize], x: u32, name: &str| -> Result<IndicatorSet> {
        for &pt in set {
            ensure!(spec.contains_index(pt), Input, "{name} contains index {pt} outside F_{p}^2");
            ensure!(spec.decode(pt)[0] == x, Input, "{name} has a point {} off the line x = {x}", spec.element_at(pt));
        }
        IndicatorSet::from_indices(spec, set.iter().copied())
    };
    let s1 = on(b1, b % p, "B1")?;
    let s2 = on(b2, (p - b % p) % p, "B2")?;
    let total = sumset(&s1, &s2)?;
    Ok((0..p).all(|y| total.contains(point(spec, 0, y))))
}
