//! Dense sumsets, subsequence sums `S_A`, restricted sumsets `m*A` and the
//! sumset growth step.

mod growth;
mod indicator;
mod sequence;
mod subsums;

pub use growth::{growth_step, growth_threshold, meets_growth_threshold, GrowthOutcome};
pub use indicator::{sumset, IndicatorSet};
pub use sequence::{dilate, ElementSequence};
pub use subsums::{
    first_complete_layer, is_incomplete, is_m_incomplete, is_m_zero_sum_free, is_zero_sum_free, subsums_all,
    subsums_all_layers, subsums_exact, subsums_layers,
};
