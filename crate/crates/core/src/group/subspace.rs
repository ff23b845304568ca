//! Linear subspaces and affine flats of F_p^d in canonical echelon form.

use super::field::Matrix;
use super::spec::{GroupElement, GroupSpec};
use crate::error::{ensure, Error, Result};

/// A linear subspace, stored as its reduced row-echelon basis.
///
/// Equal subspaces have identical bases, so derived equality is subspace equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    spec: GroupSpec,
    basis: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(spec: GroupSpec) -> Self {
        Subspace { spec, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(spec: GroupSpec) -> Self {
        Self::span(spec, &Matrix::identity(spec.d()).to_rows()).expect("identity rows have length d")
    }

    /// The span of arbitrary vectors.
    pub fn span(spec: GroupSpec, vectors: &[Vec<u32>]) -> Result<Self> {
        let d = spec.d();
        for v in vectors {
            ensure!(v.len() == d, Input, "vector of length {} in a space of dimension {d}", v.len());
            ensure!(v.iter().all(|&c| c < spec.p()), Input, "residue out of range in {v:?}");
        }
        if vectors.is_empty() {
            return Ok(Self::zero(spec));
        }
        let mut m = Matrix::from_rows(vectors, d);
        let pivots = m.rref(spec.field());
        let basis = (0..pivots.len()).map(|r| m.row(r).to_vec()).collect();
        Ok(Subspace { spec, basis, pivots })
    }

    pub fn span_indices(spec: GroupSpec, vectors: &[usize]) -> Self {
        let rows: Vec<Vec<u32>> = vectors.iter().map(|&v| spec.decode(v)).collect();
        Self::span(spec, &rows).expect("decoded vectors are well formed")
    }

    /// `{x : n·x = 0 for every n in normals}`.
    pub fn kernel(spec: GroupSpec, normals: &[Vec<u32>]) -> Result<Self> {
        let d = spec.d();
        let f = spec.field();
        let constraints = Self::span(spec, normals)?;
        let free: Vec<usize> = (0..d).filter(|c| !constraints.pivots.contains(c)).collect();
        // One kernel vector per free column: set it to 1 and solve the pivot columns.
        let vectors: Vec<Vec<u32>> = free
            .iter()
            .map(|&fc| {
                let mut v = vec![0u32; d];
                v[fc] = 1;
                for (row, &pc) in constraints.basis.iter().zip(&constraints.pivots) {
                    v[pc] = f.neg(row[fc]);
                }
                v
            })
            .collect();
        Self::span(spec, &vectors)
    }

    pub fn spec(&self) -> GroupSpec {
        self.spec
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.spec.d()
    }

    /// Number of elements, `p^dim`.
    pub fn size(&self) -> usize {
        (self.spec.p() as usize).pow(self.dim() as u32)
    }

    /// Canonical representative of the coset `v + self`: `v` with every pivot
    /// coordinate cleared against the basis.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let f = self.spec.field();
        let mut out = v.to_vec();
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            let factor = out[pc];
            if factor != 0 {
                for (o, &r) in out.iter_mut().zip(row) {
                    *o = f.sub(*o, f.mul(factor, r));
                }
            }
        }
        out
    }

    pub fn reduce_index(&self, v: usize) -> usize {
        if self.basis.is_empty() {
            return v;
        }
        self.spec.encode_unchecked(&self.reduce(&self.spec.decode(v)))
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&c| c == 0)
    }

    pub fn contains_index(&self, v: usize) -> bool {
        self.reduce_index(v) == 0
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Coordinates of a member with respect to the echelon basis (its pivot entries).
    pub fn coordinates(&self, v: &[u32]) -> Vec<u32> {
        self.pivots.iter().map(|&c| v[c]).collect()
    }

    /// Inverse of [`coordinates`](Self::coordinates).
    pub fn combine(&self, coeffs: &[u32]) -> Vec<u32> {
        let f = self.spec.field();
        let mut out = vec![0u32; self.spec.d()];
        for (row, &k) in self.basis.iter().zip(coeffs) {
            if k != 0 {
                for (o, &r) in out.iter_mut().zip(row) {
                    *o = f.add(*o, f.mul(k, r));
                }
            }
        }
        out
    }

    /// All member indices, in the order of their basis coordinates.
    pub fn members(&self) -> Vec<usize> {
        let p = self.spec.p();
        let k = self.dim();
        let mut coeffs = vec![0u32; k];
        let mut out = Vec::with_capacity(self.size());
        loop {
            out.push(self.spec.encode_unchecked(&self.combine(&coeffs)));
            let mut i = 0;
            loop {
                if i == k {
                    return out;
                }
                coeffs[i] += 1;
                if coeffs[i] < p {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
            }
        }
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Subspace::span(self.spec, &rows).expect("same spec")
    }

    /// Whether `self ⊕ other` is the whole space.
    pub fn is_complement_of(&self, other: &Subspace) -> bool {
        self.dim() + other.dim() == self.spec.d() && self.sum(other).is_full()
    }

    /// Normal vector of a hyperplane, normalised so its first nonzero entry is 1.
    pub fn normal(&self) -> Option<Vec<u32>> {
        if self.dim() + 1 != self.spec.d() {
            return None;
        }
        let orth = Subspace::kernel(self.spec, &self.basis).ok()?;
        orth.basis.first().cloned()
    }

    /// A complementary subspace spanned by standard basis vectors.
    pub fn coordinate_complement(&self) -> Subspace {
        let d = self.spec.d();
        let vectors: Vec<Vec<u32>> = (0..d)
            .filter(|c| !self.pivots.contains(c))
            .map(|c| {
                let mut e = vec![0u32; d];
                e[c] = 1;
                e
            })
            .collect();
        Subspace::span(self.spec, &vectors).expect("unit vectors")
    }
}

/// Splits `a` as `a_H + a_H2` with `a_H ∈ h` and `a_H2 ∈ h2`.
pub fn project(a: &GroupElement, h: &Subspace, h2: &Subspace) -> Result<(GroupElement, GroupElement)> {
    let spec = h.spec;
    ensure!(
        h.is_complement_of(h2),
        Domain,
        "subspaces of dimensions {} and {} are not complementary",
        h.dim(),
        h2.dim()
    );
    let d = spec.d();
    let f = spec.field();
    // Columns are the basis vectors of h followed by those of h2.
    let mut cols = Matrix::zeros(d, d);
    for (j, v) in h.basis.iter().chain(&h2.basis).enumerate() {
        for (i, &x) in v.iter().enumerate() {
            cols.set(i, j, x);
        }
    }
    let inv = cols.inverse(f).ok_or_else(|| Error::Internal("complementary bases are singular".into()))?;
    let coeffs = inv.mul_vec(f, a.coords());
    let a_h = h.combine(&coeffs[..h.dim()]);
    let a_h2 = h2.combine(&coeffs[h.dim()..]);
    Ok((spec.element(&a_h)?, spec.element(&a_h2)?))
}

/// A translate `t + V` of a linear subspace, with `t` reduced to the canonical
/// coset representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineFlat {
    translate: GroupElement,
    space: Subspace,
}

impl AffineFlat {
    pub fn new(translate: &GroupElement, space: Subspace) -> Self {
        let spec = space.spec;
        let rep = space.reduce(translate.coords());
        AffineFlat { translate: spec.element(&rep).expect("reduced vector is in range"), space }
    }

    pub fn from_index(spec: GroupSpec, translate: usize, space: Subspace) -> Self {
        Self::new(&spec.element_at(translate), space)
    }

    pub fn point(spec: GroupSpec, index: usize) -> Self {
        Self::from_index(spec, index, Subspace::zero(spec))
    }

    /// `{x : normal·x = offset}`.
    pub fn hyperplane(spec: GroupSpec, normal: &[u32], offset: u32) -> Result<Self> {
        let lead = normal
            .iter()
            .position(|&c| c != 0)
            .ok_or_else(|| Error::Input("zero normal vector".into()))?;
        let f = spec.field();
        let mut t = vec![0u32; spec.d()];
        t[lead] = f.mul(offset, f.inv(normal[lead]));
        let space = Subspace::kernel(spec, &[normal.to_vec()])?;
        Ok(Self::new(&spec.element(&t)?, space))
    }

    pub fn translate(&self) -> &GroupElement {
        &self.translate
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn contains_index(&self, x: usize) -> bool {
        let spec = self.space.spec;
        self.space.contains_index(spec.sub(x, self.translate.index()))
    }

    pub fn members(&self) -> Vec<usize> {
        let spec = self.space.spec;
        let t = self.translate.index();
        self.space.members().into_iter().map(|v| spec.add(v, t)).collect()
    }
}

/// Normal vectors of all linear hyperplanes: nonzero vectors whose first nonzero
/// coordinate is 1, in lexicographic coordinate order.
pub fn hyperplane_normals(spec: GroupSpec) -> Vec<Vec<u32>> {
    let d = spec.d();
    let p = spec.p();
    let mut out = Vec::new();
    for lead in 0..d {
        // entries before `lead` are zero, entry `lead` is one, the tail is free
        let tail = d - lead - 1;
        let count = (p as usize).pow(tail as u32);
        for t in 0..count {
            let mut v = vec![0u32; d];
            v[lead] = 1;
            let mut rest = t;
            // most significant tail coordinate first, so the output is lexicographic
            for c in (lead + 1..d).rev() {
                v[c] = (rest % p as usize) as u32;
                rest /= p as usize;
            }
            out.push(v);
        }
    }
    out.sort();
    out
}

/// All `(p^d - 1)/(p - 1)` linear hyperplanes, in the order of their normals.
/// For `d = 1` this is the single subspace `{0}`.
pub fn enumerate_hyperplanes(spec: GroupSpec) -> Vec<Subspace> {
    hyperplane_normals(spec)
        .iter()
        .map(|n| Subspace::kernel(spec, std::slice::from_ref(n)).expect("normal has length d"))
        .collect()
}

/// Whether `d + 1` points are in general position.
pub fn is_affine_basis(spec: GroupSpec, points: &[GroupElement]) -> Result<bool> {
    let d = spec.d();
    ensure!(points.len() == d + 1, Input, "an affine basis of F_p^{d} has {} points, got {}", d + 1, points.len());
    let f = spec.field();
    let base = points[0].coords();
    let diffs: Vec<Vec<u32>> = points[1..]
        .iter()
        .map(|q| q.coords().iter().zip(base).map(|(&a, &b)| f.sub(a, b)).collect())
        .collect();
    Ok(Matrix::from_rows(&diffs, d).rank(f) == d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(p: u64, d: u32) -> GroupSpec {
        GroupSpec::new(p, d).unwrap()
    }

    #[test]
    fn hyperplane_counts() {
        assert_eq!(enumerate_hyperplanes(spec(3, 2)).len(), 4);
        assert_eq!(enumerate_hyperplanes(spec(5, 2)).len(), 6);
        assert_eq!(enumerate_hyperplanes(spec(3, 3)).len(), 13);
        assert_eq!(enumerate_hyperplanes(spec(7, 1)), vec![Subspace::zero(spec(7, 1))]);
    }

    #[test]
    fn normals_are_lexicographic_and_normalised() {
        let normals = hyperplane_normals(spec(3, 3));
        let mut sorted = normals.clone();
        sorted.sort();
        assert_eq!(normals, sorted);
        for n in &normals {
            assert_eq!(n.iter().find(|&&c| c != 0), Some(&1));
        }
    }

    #[test]
    fn each_nonzero_vector_lies_in_the_right_number_of_hyperplanes() {
        // exhaustive orbit count: x ≠ 0 lies in (p^{d-1} - 1)/(p - 1) hyperplanes
        for (p, d) in [(3u64, 2u32), (5, 2), (3, 3), (2, 4)] {
            let s = spec(p, d);
            let hs = enumerate_hyperplanes(s);
            let expected = ((p as usize).pow(d - 1) - 1) / (p as usize - 1);
            for x in 1..s.order() {
                let hits = hs.iter().filter(|h| h.contains_index(x)).count();
                assert_eq!(hits, expected, "p={p} d={d} x={x}");
            }
            for (i, a) in hs.iter().enumerate() {
                assert_eq!(a.dim(), d as usize - 1);
                for b in &hs[i + 1..] {
                    assert_ne!(a, b);
                }
            }
        }
    }

    #[test]
    fn canonical_form_is_unique() {
        let s = spec(5, 3);
        let a = Subspace::span(s, &[vec![1, 2, 3], vec![0, 1, 4]]).unwrap();
        let b = Subspace::span(s, &[vec![1, 3, 2], vec![2, 4, 1]]).unwrap();
        // second spanning set: (1,3,2) = (1,2,3)+(0,1,4); (2,4,1) = 2·(1,2,3)
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert!(a.contains(&[1, 3, 2]));
        assert!(!a.contains(&[0, 0, 1]));
    }

    #[test]
    fn members_match_membership_test() {
        let s = spec(3, 3);
        let h = Subspace::span(s, &[vec![1, 1, 0]]).unwrap();
        let members = h.members();
        assert_eq!(members.len(), 3);
        for x in s.indices() {
            assert_eq!(members.contains(&x), h.contains_index(x));
        }
    }

    #[test]
    fn project_examples() {
        let s = spec(5, 2);
        let x_axis = Subspace::span(s, &[vec![1, 0]]).unwrap();
        let y_axis = Subspace::span(s, &[vec![0, 1]]).unwrap();
        let zero = s.element(&[0, 0]).unwrap();
        let (a, b) = project(&zero, &x_axis, &y_axis).unwrap();
        assert_eq!((a.coords(), b.coords()), (&[0, 0][..], &[0, 0][..]));

        let (a, b) = project(&s.element(&[3, 4]).unwrap(), &x_axis, &y_axis).unwrap();
        assert_eq!((a.coords(), b.coords()), (&[3, 0][..], &[0, 4][..]));

        let diag = Subspace::span(s, &[vec![1, 1]]).unwrap();
        let (a, b) = project(&s.element(&[1, 1]).unwrap(), &diag, &y_axis).unwrap();
        assert_eq!((a.coords(), b.coords()), (&[1, 1][..], &[0, 0][..]));

        assert!(matches!(project(&zero, &diag, &diag), Err(Error::Domain(_))));
    }

    #[test]
    fn project_agrees_with_exhaustive_search() {
        let s = spec(5, 2);
        let diag = Subspace::span(s, &[vec![1, 1]]).unwrap();
        let y_axis = Subspace::span(s, &[vec![0, 1]]).unwrap();
        for a in s.indices() {
            let (ah, ah2) = project(&s.element_at(a), &diag, &y_axis).unwrap();
            let brute: Vec<(usize, usize)> = diag
                .members()
                .into_iter()
                .flat_map(|u| y_axis.members().into_iter().map(move |v| (u, v)))
                .filter(|&(u, v)| s.add(u, v) == a)
                .collect();
            assert_eq!(brute, vec![(ah.index(), ah2.index())]);
        }
    }

    #[test]
    fn affine_basis_examples() {
        let s = spec(5, 2);
        let pts = |v: &[[u32; 2]]| v.iter().map(|c| s.element(c).unwrap()).collect::<Vec<_>>();
        assert!(is_affine_basis(s, &pts(&[[0, 0], [1, 0], [0, 1]])).unwrap());
        assert!(!is_affine_basis(s, &pts(&[[0, 0], [1, 1], [2, 2]])).unwrap());
        assert!(!is_affine_basis(s, &pts(&[[0, 0], [0, 0], [0, 0]])).unwrap());
        assert!(matches!(is_affine_basis(s, &pts(&[[0, 0], [1, 0]])), Err(Error::Input(_))));
    }

    #[test]
    fn flats_compare_by_coset() {
        let s = spec(5, 2);
        let line = Subspace::span(s, &[vec![1, 2]]).unwrap();
        let a = AffineFlat::new(&s.element(&[0, 1]).unwrap(), line.clone());
        let b = AffineFlat::new(&s.element(&[1, 3]).unwrap(), line.clone());
        let c = AffineFlat::new(&s.element(&[1, 1]).unwrap(), line);
        assert_eq!(a, b);
        assert_ne!(a, c);
        let h = AffineFlat::hyperplane(s, &[1, 0], 3).unwrap();
        let members = h.members();
        assert_eq!(members.len(), 5);
        assert!(members.iter().all(|&x| s.decode(x)[0] == 3));
        assert!(members.iter().all(|&x| h.contains_index(x)));
    }

    #[test]
    fn normal_of_hyperplane() {
        let s = spec(5, 3);
        for n in hyperplane_normals(s) {
            let h = Subspace::kernel(s, &[n.clone()]).unwrap();
            assert_eq!(h.normal().unwrap(), n);
        }
    }
}
