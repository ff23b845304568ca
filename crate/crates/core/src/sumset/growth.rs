//! One step of sumset growth: find `a` with `(a + Y) \ (a' + Y)` large, or a
//! hyperplane holding a large share of the sequence.

use super::{ElementSequence, IndicatorSet};
use crate::error::{ensure, Error, Result};
use crate::group::AffineFlat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GrowthOutcome {
    /// `|(element + Y) \ (a_prev + Y)| = gain` meets the growth threshold.
    Growth { element: usize, gain: usize },
    /// No element grows `Y` enough; this affine hyperplane holds `count`
    /// elements of the sequence, more than `|A|/(4W)`.
    Concentrated { flat: AffineFlat, count: usize },
}

/// The growth threshold `(W/16p)·|Y|` as an exact rational test on `gain`.
pub fn meets_growth_threshold(gain: usize, y_len: usize, p: u32, w: f64) -> bool {
    gain as f64 * 16.0 * p as f64 >= w * y_len as f64
}

/// Smallest integer gain that meets the threshold, `⌈(W/16p)·|Y|⌉`.
pub fn growth_threshold(y_len: usize, p: u32, w: f64) -> usize {
    (w * y_len as f64 / (16.0 * p as f64)).ceil() as usize
}

/// Finds the element of `seq` whose translate of `y` adds the most points
/// outside `a_prev + y` (ties to the smallest index). Returns it when the gain
/// reaches `(W/16p)·|Y|`; otherwise returns a hyperplane holding more than
/// `|A|/(4W)` elements of `seq`, counted with multiplicity.
pub fn growth_step(seq: &ElementSequence, y: &IndicatorSet, a_prev: usize, w: f64) -> Result<GrowthOutcome> {
    let spec = seq.spec();
    ensure!(w >= 1.0, Input, "W must be at least 1, got {w}");
    ensure!(
        2 * y.len() <= spec.order(),
        Precondition,
        "|Y| = {} exceeds half the group ({} elements)",
        y.len(),
        spec.order()
    );
    ensure!(seq.multiplicity(a_prev) > 0, Precondition, "a_prev = {a_prev} is not an element of the sequence");

    let base = y.translated(a_prev);
    let mut best: Option<(usize, usize)> = None;
    let mut scratch = IndicatorSet::empty(spec);
    for a in seq.distinct() {
        scratch.clear();
        y.translate_or_into(a, &mut scratch);
        let gain = scratch.difference_len(&base);
        if best.is_none_or(|(_, g)| gain > g) {
            best = Some((a, gain));
        }
    }
    let (element, gain) = best.ok_or_else(|| Error::Precondition("empty sequence".into()))?;
    if meets_growth_threshold(gain, y.len(), spec.p(), w) {
        return Ok(GrowthOutcome::Growth { element, gain });
    }
    let (flat, count) = seq
        .richest_hyperplane_through(a_prev)
        .filter(|&(_, c)| c as f64 * 4.0 * w > seq.len() as f64)
        .or_else(|| seq.richest_hyperplane().filter(|&(_, c)| c as f64 * 4.0 * w > seq.len() as f64))
        .ok_or_else(|| {
            Error::Internal(format!(
                "best gain {gain} is below (W/16p)|Y| yet no hyperplane holds more than |A|/(4W) of {} elements",
                seq.len()
            ))
        })?;
    Ok(GrowthOutcome::Concentrated { flat, count })
}
