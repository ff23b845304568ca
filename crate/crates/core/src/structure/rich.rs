//! The rich-hyperplane dichotomy: either an affine hyperplane holds `⌈εp⌉`
//! elements, or two disjoint grown sumsets certify `m*A = F_p^d`.

use super::bases::{extract_disjoint_affine_bases, grow_to_half_space, GrowStop};
use super::{ceil_times, DecompositionParams};
use crate::error::{ensure, Error, Result};
use crate::group::AffineFlat;
use crate::sumset::{subsums_exact, sumset, ElementSequence, IndicatorSet};

#[derive(Debug, Clone, PartialEq)]
pub enum RichHyperplaneResult {
    /// `count = |A ∩ hyperplane| ≥ ⌈εp⌉`.
    Hyperplane { hyperplane: AffineFlat, count: usize },
    /// `m*A = F_p^d` with `m ≤ βp`, checked exactly.
    Complete { m: usize },
    /// Neither arm could be established with these parameters.
    Inconclusive {
        best_count: usize,
        threshold: usize,
        /// Sizes reached by the two grown sets, if growth was attempted.
        growth: Option<(usize, usize)>,
        reason: String,
    },
}

fn basis_sumset(spec: crate::group::GroupSpec, bases: &[Vec<usize>]) -> Result<IndicatorSet> {
    let mut acc = IndicatorSet::singleton(spec, 0);
    for b in bases {
        acc = sumset(&acc, &IndicatorSet::from_indices(spec, b.iter().copied())?)?;
    }
    Ok(acc)
}

/// Scans all affine hyperplanes for one holding `⌈εp⌉` elements of `seq`
/// (the richest, ties in canonical order). Failing that, splits `seq` into two
/// families of `s = max(1, ⌊c p⌋)` disjoint affine bases, `c = min(β,δ)/4(d+1)`,
/// and two disjoint pools, grows both basis sumsets past half the group and
/// reads off `m = 2s + k + l` with `E_k + F_l ⊆ m*A`.
pub fn find_rich_hyperplane(seq: &ElementSequence, params: &DecompositionParams) -> Result<RichHyperplaneResult> {
    params.validate()?;
    let spec = seq.spec();
    let p = spec.p();
    let d = spec.d();
    ensure!(
        seq.len() as f64 >= params.delta * p as f64,
        Precondition,
        "the sequence has {} elements, fewer than delta*p = {}",
        seq.len(),
        params.delta * p as f64
    );
    let epsilon = params.epsilon.unwrap_or(params.alpha / 2.0);
    let threshold = ceil_times(epsilon, p).max(1);
    let (hyperplane, best_count) = seq.richest_hyperplane().ok_or_else(|| Error::Precondition("empty sequence".into()))?;
    if best_count >= threshold {
        return Ok(RichHyperplaneResult::Hyperplane { hyperplane, count: best_count });
    }

    let inconclusive = |growth, reason: String| RichHyperplaneResult::Inconclusive { best_count, threshold, growth, reason };
    let c1 = params.beta.min(params.delta) / (4.0 * (d + 1) as f64);
    let s = ((c1 * p as f64).floor() as usize).max(1);
    let (bases, rest) = extract_disjoint_affine_bases(seq, 2 * s);
    if bases.len() < 2 * s {
        return Ok(inconclusive(None, format!("only {} disjoint affine bases, {} needed", bases.len(), 2 * s)));
    }
    let m_cap = (params.beta * p as f64).floor() as usize;
    if 2 * s > m_cap {
        return Ok(inconclusive(None, format!("2s = {} already exceeds beta*p", 2 * s)));
    }
    let e0 = basis_sumset(spec, &bases[..s])?;
    let f0 = basis_sumset(spec, &bases[s..])?;
    let (mut e_pool, mut f_pool) = (ElementSequence::new(spec), ElementSequence::new(spec));
    for (i, x) in rest.iter().enumerate() {
        if i % 2 == 0 { e_pool.push(x, 1) } else { f_pool.push(x, 1) }
    }
    let cap = (m_cap - 2 * s) / 2;
    let e = grow_to_half_space(&e0, &e_pool, params.w, cap)?;
    let f = grow_to_half_space(&f0, &f_pool, params.w, cap)?;
    let sizes = Some((e.grown.len(), f.grown.len()));
    if e.stop != GrowStop::HalfSpace || f.stop != GrowStop::HalfSpace {
        return Ok(inconclusive(sizes, "growth stopped before half the group".into()));
    }
    let m = 2 * s + e.rounds() + f.rounds();
    if !subsums_exact(seq, m)?.is_full() {
        return Err(Error::Internal(format!(
            "two sets larger than half the group built from disjoint elements, yet {m}*A is not everything"
        )));
    }
    Ok(RichHyperplaneResult::Complete { m })
}
