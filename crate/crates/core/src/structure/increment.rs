//! Composing translate certificates across complementary subspaces.

use super::find_translate;
use crate::error::{ensure, Error, Result};
use crate::group::{project, AffineFlat, Subspace};
use crate::sumset::{subsums_exact, sumset, ElementSequence};

/// Projection of every element of `seq` onto `onto` along `along`.
pub(crate) fn project_sequence(seq: &ElementSequence, along: &Subspace, onto: &Subspace) -> Result<ElementSequence> {
    let spec = seq.spec();
    let mut out = ElementSequence::new(spec);
    for &(x, k) in seq.entries() {
        let (_, b) = project(&spec.element_at(x), along, onto)?;
        out.push(b.index(), k);
    }
    Ok(out)
}

/// Image of the subspace `h` under projection onto `onto` along `along`.
pub(crate) fn project_subspace(h: &Subspace, along: &Subspace, onto: &Subspace) -> Result<Subspace> {
    let spec = h.spec();
    let mut images = Vec::with_capacity(h.dim());
    for v in h.basis() {
        let (_, b) = project(&spec.element(v)?, along, onto)?;
        images.push(b.index());
    }
    Ok(Subspace::span_indices(spec, &images))
}

/// Given `v1 + H1 ⊆ m1*A1` and `v2 + H2 ⊆ m2*(π(A2))`, where `π` projects onto
/// `H1c` along `H1` and `H2 ⊆ H1c`, returns the flat `(v1 + v2) + (H1 + H2)`
/// and checks that it lies in `m1*A1 + m2*A2`.
pub fn dimension_increment(
    a1: &ElementSequence,
    m1: usize,
    h1: &Subspace,
    a2: &ElementSequence,
    m2: usize,
    h1c: &Subspace,
    h2: &Subspace,
) -> Result<AffineFlat> {
    let spec = a1.spec();
    ensure!(h1.is_complement_of(h1c), Precondition, "H1 and H1c are not complementary");
    ensure!(h1c.contains_subspace(h2), Precondition, "H2 is not contained in H1c");
    let s1 = subsums_exact(a1, m1)?;
    let t1 = find_translate(&s1, h1)
        .ok_or_else(|| Error::Precondition(format!("{m1}*A1 contains no translate of H1 (dim {})", h1.dim())))?;
    let projected = project_sequence(a2, h1, h1c)?;
    let t2 = find_translate(&subsums_exact(&projected, m2)?, h2).ok_or_else(|| {
        Error::Precondition(format!("{m2}*pi(A2) contains no translate of H2 (dim {})", h2.dim()))
    })?;
    let flat = AffineFlat::from_index(spec, spec.add(t1.translate().index(), t2.translate().index()), h1.sum(h2));
    let total = sumset(&s1, &subsums_exact(a2, m2)?)?;
    if !flat.members().into_iter().all(|x| total.contains(x)) {
        return Err(Error::Internal("composed flat is not inside m1*A1 + m2*A2".into()));
    }
    Ok(flat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    fn axis(spec: GroupSpec, i: usize) -> Subspace {
        let mut v = vec![0u32; spec.d()];
        v[i] = 1;
        Subspace::span(spec, &[v]).unwrap()
    }

    #[test]
    fn points_compose_to_a_point() {
        let spec = GroupSpec::new(5, 2).unwrap();
        let a1 = ElementSequence::from_indices(spec, [7]).unwrap();
        let a2 = ElementSequence::from_indices(spec, [11]).unwrap();
        let zero = Subspace::zero(spec);
        let full = Subspace::full(spec);
        let flat = dimension_increment(&a1, 1, &zero, &a2, 1, &full, &zero).unwrap();
        assert_eq!(flat.dim(), 0);
        assert_eq!(flat.translate().index(), spec.add(7, 11));
    }

    #[test]
    fn axes_compose_to_the_plane() {
        let spec = GroupSpec::new(3, 2).unwrap();
        let x = axis(spec, 0);
        let y = axis(spec, 1);
        // 2*A1 covers the x-axis; A2 projects onto the y-axis as {0, 1, 2}
        let a1 = ElementSequence::from_indices(spec, [0, 1, 2]).unwrap();
        let a2 = ElementSequence::from_indices(spec, [spec.encode(&[1, 0]).unwrap(), spec.encode(&[2, 1]).unwrap(), spec.encode(&[0, 2]).unwrap()]).unwrap();
        let flat = dimension_increment(&a1, 2, &x, &a2, 1, &y, &y).unwrap();
        assert_eq!(flat.dim(), 2);
        let total = sumset(&subsums_exact(&a1, 2).unwrap(), &subsums_exact(&a2, 1).unwrap()).unwrap();
        assert!(total.is_full());
    }

    #[test]
    fn failing_clause_is_named() {
        let spec = GroupSpec::new(3, 2).unwrap();
        let x = axis(spec, 0);
        let y = axis(spec, 1);
        let a1 = ElementSequence::from_indices(spec, [1]).unwrap();
        let err = dimension_increment(&a1, 1, &x, &a1, 1, &y, &y).unwrap_err();
        assert!(err.to_string().contains("H1"), "{err}");
        let err = dimension_increment(&a1, 1, &x, &a1, 1, &x, &x).unwrap_err();
        assert!(err.to_string().contains("complementary"), "{err}");
    }
}
