//! Constructive versions of the structural arguments for incomplete
//! sequences: rich hyperplanes, affine bases and sumset growth, the `d = 1`
//! dilation split, certificate composition across complementary subspaces,
//! and the full decomposition with an exact verifier.

mod bases;
mod d1;
mod decompose;
mod increment;
mod rich;

pub use bases::{extract_disjoint_affine_bases, grow_to_half_space, GrowReport, GrowStop};
pub use d1::{classify_d1, D1Outcome, DilationDecomposition};
pub use decompose::{
    decompose, verify_decomposition, Clause, CompletenessWitness, DecomposeOutcome, Decomposition, Diagnostics,
    Route, VerificationReport,
};
pub use increment::dimension_increment;
pub use rich::{find_rich_hyperplane, RichHyperplaneResult};

use serde::Serialize;

use crate::error::{ensure, Result};
use crate::group::{AffineFlat, Subspace};
use crate::sumset::IndicatorSet;

/// Tunable constants for the decomposition and the rich-hyperplane lemma.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecompositionParams {
    /// Bound on the exceptional part: `|A_0| ≤ α p`.
    pub alpha: f64,
    /// Completeness is sought for `m ≤ β p`.
    pub beta: f64,
    /// Block length is `⌊ε p⌋`. `None` searches `ε = α/2, α/4, …` while
    /// `ε p ≥ 2`.
    pub epsilon: Option<f64>,
    /// Minimum length `δ p` for the rich-hyperplane lemma.
    pub delta: f64,
    /// Growth constant `W ≥ 1`.
    pub w: f64,
    /// Norm cutoff for the outliers of the one-dimensional split; `None`
    /// means `2/ε`.
    pub norm_cutoff: Option<f64>,
    /// Seed for the order in which witness elements are dropped.
    pub seed: u64,
}

impl Default for DecompositionParams {
    fn default() -> Self {
        DecompositionParams { alpha: 0.25, beta: 0.5, epsilon: None, delta: 0.5, w: 64.0, norm_cutoff: None, seed: 0 }
    }
}

impl DecompositionParams {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("alpha", self.alpha), ("beta", self.beta), ("delta", self.delta)] {
            ensure!(v > 0.0 && v <= 1.0, Input, "{name} must lie in (0, 1], got {v}");
        }
        if let Some(e) = self.epsilon {
            ensure!(e > 0.0 && e <= self.alpha, Input, "epsilon must lie in (0, alpha], got {e}");
        }
        ensure!(self.w >= 1.0, Input, "W must be at least 1, got {}", self.w);
        if let Some(c) = self.norm_cutoff {
            ensure!(c >= 0.0, Input, "norm cutoff must be non-negative, got {c}");
        }
        Ok(())
    }

    /// The values of `ε` tried by [`decompose`], largest first.
    pub fn epsilon_schedule(&self, p: u32) -> Vec<f64> {
        if let Some(e) = self.epsilon {
            return vec![e];
        }
        let mut out = Vec::new();
        let mut e = self.alpha / 2.0;
        while e * p as f64 >= 2.0 {
            out.push(e);
            e /= 2.0;
        }
        out
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = Some(epsilon);
        self
    }
}

pub(crate) fn floor_times(x: f64, p: u32) -> usize {
    (x * p as f64 + 1e-9).floor() as usize
}

pub(crate) fn ceil_times(x: f64, p: u32) -> usize {
    (x * p as f64 - 1e-9).ceil() as usize
}

/// A translate `t + H` contained in `set`, with `t` the smallest coset
/// representative that works.
pub fn find_translate(set: &IndicatorSet, h: &Subspace) -> Option<AffineFlat> {
    let spec = set.spec();
    if set.len() < h.size() {
        return None;
    }
    let members = h.members();
    set.iter()
        .filter(|&x| h.reduce_index(x) == x)
        .find(|&t| members.iter().all(|&v| set.contains(spec.add(t, v))))
        .map(|t| AffineFlat::from_index(spec, t, h.clone()))
}
