//! Incomplete sequences in F_p: after a dilation, most elements have small
//! circular norm.

use crate::error::{ensure, Result};
use crate::group::norm;
use crate::sumset::{dilate, subsums_all, ElementSequence};

#[derive(Debug, Clone, PartialEq)]
pub struct DilationDecomposition {
    pub b: u32,
    /// Elements of `b·A` left over after the norm budget ran out.
    pub flat: ElementSequence,
    /// Elements of `b·A` with `Σ ‖a‖ < p`.
    pub sharp: ElementSequence,
    pub sharp_norm_sum: u64,
    /// `|flat| ≤ p^{12/13}`.
    pub meets_bound: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum D1Outcome {
    /// `S_A = F_p`.
    Complete,
    Dilation(DilationDecomposition),
}

fn split(seq: &ElementSequence, b: u32) -> Result<DilationDecomposition> {
    let spec = seq.spec();
    let p = spec.p() as u64;
    let image = dilate(b, seq)?;
    let mut by_norm: Vec<(u32, usize, usize)> =
        image.entries().iter().map(|&(x, k)| Ok((norm(&spec, x as u32)?, x, k))).collect::<Result<_>>()?;
    by_norm.sort_unstable();
    let mut flat = ElementSequence::new(spec);
    let mut sharp = ElementSequence::new(spec);
    let mut total = 0u64;
    let mut open = true;
    for (n, x, k) in by_norm {
        let take = if !open {
            0
        } else if n == 0 {
            k
        } else {
            (((p - 1 - total) / n as u64) as usize).min(k)
        };
        total += take as u64 * n as u64;
        if take < k {
            open = false;
        }
        sharp.push(x, take);
        flat.push(x, k - take);
    }
    let bound = (p as f64).powf(12.0 / 13.0);
    Ok(DilationDecomposition { b, meets_bound: flat.len() as f64 <= bound, flat, sharp, sharp_norm_sum: total })
}

/// Either `A` is complete, or the dilation `b·A` (over all `b ≠ 0`) whose
/// greedy split leaves the fewest elements in the flat part, ties to the
/// smallest `b`. The greedy split takes elements of `b·A` by increasing norm,
/// ties to the smaller residue, while the norm sum stays below `p`.
pub fn classify_d1(seq: &ElementSequence) -> Result<D1Outcome> {
    let spec = seq.spec();
    ensure!(spec.d() == 1, Domain, "classify_d1 needs d = 1, got d = {}", spec.d());
    if subsums_all(seq).is_full() {
        return Ok(D1Outcome::Complete);
    }
    let mut best: Option<DilationDecomposition> = None;
    for b in 1..spec.p() {
        let cand = split(seq, b)?;
        if best.as_ref().is_none_or(|bst| cand.flat.len() < bst.flat.len()) {
            best = Some(cand);
        }
    }
    Ok(D1Outcome::Dilation(best.expect("p ≥ 2 gives at least one dilation")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    fn seq(p: u64, xs: &[usize]) -> ElementSequence {
        ElementSequence::from_indices(GroupSpec::new(p, 1).unwrap(), xs.iter().copied()).unwrap()
    }

    fn unwrap(out: D1Outcome) -> DilationDecomposition {
        match out {
            D1Outcome::Dilation(d) => d,
            D1Outcome::Complete => panic!("unexpectedly complete"),
        }
    }

    #[test]
    fn constant_run() {
        let d = unwrap(classify_d1(&seq(11, &[1; 7])).unwrap());
        assert_eq!(d.b, 1);
        assert!(d.flat.is_empty());
        assert_eq!(d.sharp_norm_sum, 7);
    }

    #[test]
    fn dilation_to_small_norms() {
        let a = seq(101, &[2, 4, 6]);
        let d = unwrap(classify_d1(&a).unwrap());
        assert_eq!(d.b, 1);
        assert!(d.flat.is_empty());
        let by51 = split(&a, 51).unwrap();
        assert_eq!(by51.sharp.to_vec(), vec![1, 2, 3]);
        assert_eq!(by51.sharp_norm_sum, 6);
    }

    #[test]
    fn minimality_against_every_dilation() {
        let a = seq(13, &[3, 3, 3, 6, 6]);
        let d = unwrap(classify_d1(&a).unwrap());
        for b in 1..13 {
            let c = split(&a, b).unwrap();
            assert!(c.flat.len() > d.flat.len() || (c.flat.len() == d.flat.len() && b >= d.b));
            assert_eq!(c.flat.union(&c.sharp), dilate(b, &a).unwrap());
            assert!(c.sharp_norm_sum < 13);
        }
    }

    #[test]
    fn complete_sequence() {
        assert_eq!(classify_d1(&seq(7, &[1, 2, 3, 4, 5, 6])).unwrap(), D1Outcome::Complete);
    }

    #[test]
    fn needs_dimension_one() {
        let spec = GroupSpec::new(3, 2).unwrap();
        assert!(classify_d1(&ElementSequence::from_indices(spec, [1]).unwrap()).is_err());
    }
}
