use std::collections::BTreeMap;

use crate::error::{ensure, Error, Result};
use crate::group::{hyperplane_normals, AffineFlat, GroupElement, GroupSpec};

/// A finite multiset of group elements.
///
/// Entries are kept sorted by canonical index with distinct elements, so the
/// derived equality is multiset equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ElementSequence {
    spec: GroupSpec,
    entries: Vec<(usize, usize)>,
    len: usize,
}

impl ElementSequence {
    pub fn new(spec: GroupSpec) -> Self {
        ElementSequence { spec, entries: Vec::new(), len: 0 }
    }

    pub fn from_indices(spec: GroupSpec, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        Self::from_pairs(spec, indices.into_iter().map(|x| (x, 1)))
    }

    /// Builds from `(index, multiplicity)` pairs; repeated indices are merged.
    pub fn from_pairs(spec: GroupSpec, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (x, k) in pairs {
            ensure!(x < spec.order(), Input, "index {x} outside a group of order {}", spec.order());
            ensure!(k >= 1, Input, "multiplicity must be at least 1");
            *map.entry(x).or_insert(0usize) += k;
        }
        let entries: Vec<(usize, usize)> = map.into_iter().collect();
        let len = entries.iter().map(|e| e.1).sum();
        Ok(ElementSequence { spec, entries, len })
    }

    pub fn from_elements(spec: GroupSpec, elements: &[GroupElement]) -> Result<Self> {
        Self::from_indices(spec, elements.iter().map(|e| e.index()))
    }

    pub fn spec(&self) -> GroupSpec {
        self.spec
    }

    /// Total multiplicity.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn entries(&self) -> &[(usize, usize)] {
        &self.entries
    }

    pub fn distinct(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|e| e.0)
    }

    pub fn distinct_len(&self) -> usize {
        self.entries.len()
    }

    pub fn multiplicity(&self, x: usize) -> usize {
        self.entries.binary_search_by_key(&x, |e| e.0).map(|i| self.entries[i].1).unwrap_or(0)
    }

    /// Elements with repetition, in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().flat_map(|&(x, k)| std::iter::repeat_n(x, k))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn elements(&self) -> Vec<GroupElement> {
        self.iter().map(|x| self.spec.element_at(x)).collect()
    }

    pub fn push(&mut self, x: usize, k: usize) {
        assert!(x < self.spec.order());
        if k == 0 {
            return;
        }
        match self.entries.binary_search_by_key(&x, |e| e.0) {
            Ok(i) => self.entries[i].1 += k,
            Err(i) => self.entries.insert(i, (x, k)),
        }
        self.len += k;
    }

    /// Removes `k` copies of `x`.
    pub fn remove(&mut self, x: usize, k: usize) -> Result<()> {
        let i = self
            .entries
            .binary_search_by_key(&x, |e| e.0)
            .map_err(|_| Error::Input(format!("element {x} is not in the sequence")))?;
        ensure!(self.entries[i].1 >= k, Input, "element {x} occurs fewer than {k} times");
        self.entries[i].1 -= k;
        if self.entries[i].1 == 0 {
            self.entries.remove(i);
        }
        self.len -= k;
        Ok(())
    }

    /// Multiset sum.
    pub fn union(&self, other: &ElementSequence) -> ElementSequence {
        let mut out = self.clone();
        for &(x, k) in &other.entries {
            out.push(x, k);
        }
        out
    }

    pub fn is_submultiset_of(&self, other: &ElementSequence) -> bool {
        self.spec == other.spec && self.entries.iter().all(|&(x, k)| other.multiplicity(x) >= k)
    }

    /// `self - other`; fails unless `other` is a sub-multiset.
    pub fn difference(&self, other: &ElementSequence) -> Result<ElementSequence> {
        ensure!(other.is_submultiset_of(self), Input, "not a sub-multiset");
        let mut out = self.clone();
        for &(x, k) in &other.entries {
            out.remove(x, k)?;
        }
        Ok(out)
    }

    /// Pointwise image under `f`, merging collisions.
    pub fn map_indices(&self, f: impl Fn(usize) -> usize) -> ElementSequence {
        Self::from_pairs(self.spec, self.entries.iter().map(|&(x, k)| (f(x), k))).expect("image stays in the group")
    }

    /// Image in a different group.
    pub fn map_into(&self, target: GroupSpec, f: impl Fn(usize) -> usize) -> Result<ElementSequence> {
        Self::from_pairs(target, self.entries.iter().map(|&(x, k)| (f(x), k)))
    }

    /// `A + v`: every element shifted by `v`.
    pub fn translated(&self, v: usize) -> ElementSequence {
        self.map_indices(|x| self.spec.add(x, v))
    }

    pub fn filter(&self, keep: impl Fn(usize) -> bool) -> ElementSequence {
        let entries: Vec<(usize, usize)> = self.entries.iter().copied().filter(|&(x, _)| keep(x)).collect();
        let len = entries.iter().map(|e| e.1).sum();
        ElementSequence { spec: self.spec, entries, len }
    }

    /// Sum of all elements (with multiplicity).
    pub fn total(&self) -> usize {
        self.entries.iter().fold(0, |acc, &(x, k)| self.spec.add(acc, self.spec.times(k, x)))
    }

    /// Number of elements (with multiplicity) lying in `flat`.
    pub fn count_in(&self, flat: &AffineFlat) -> usize {
        self.entries.iter().filter(|&&(x, _)| flat.contains_index(x)).map(|e| e.1).sum()
    }

    /// The affine hyperplane holding the most elements, counted with
    /// multiplicity. Ties go to the lexicographically first normal, then the
    /// smallest offset. In F_p (d = 1) hyperplanes are single points.
    pub fn richest_hyperplane(&self) -> Option<(AffineFlat, usize)> {
        let (normal, offset, count) = self.hyperplane_histograms().max_by(|a, b| a.2.cmp(&b.2).then(b.0.cmp(&a.0)).then(b.1.cmp(&a.1)))?;
        let flat = AffineFlat::hyperplane(self.spec, &normal, offset).expect("normal is nonzero");
        Some((flat, count))
    }

    /// Richest hyperplane through the point `through`.
    pub fn richest_hyperplane_through(&self, through: usize) -> Option<(AffineFlat, usize)> {
        let spec = self.spec;
        let (normal, offset, count) = self
            .hyperplane_histograms()
            .filter(|(n, c, _)| spec.dot(n, through) == *c)
            .max_by(|a, b| a.2.cmp(&b.2).then(b.0.cmp(&a.0)))?;
        let flat = AffineFlat::hyperplane(spec, &normal, offset).expect("normal is nonzero");
        Some((flat, count))
    }

    /// `(normal, offset, count)` for every affine hyperplane, normals in
    /// lexicographic order, offsets ascending.
    fn hyperplane_histograms(&self) -> impl Iterator<Item = (Vec<u32>, u32, usize)> + '_ {
        let spec = self.spec;
        let coords: Vec<(Vec<u32>, usize)> = self.entries.iter().map(|&(x, k)| (spec.decode(x), k)).collect();
        let f = spec.field();
        hyperplane_normals(spec).into_iter().flat_map(move |n| {
            let mut hist = vec![0usize; spec.p() as usize];
            for (c, k) in &coords {
                hist[f.dot(&n, c) as usize] += k;
            }
            hist.into_iter().enumerate().map(move |(off, cnt)| (n.clone(), off as u32, cnt))
        })
    }
}

impl std::fmt::Display for ElementSequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, &(x, k)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.spec.element_at(x))?;
            if k > 1 {
                write!(f, "x{k}")?;
            }
        }
        write!(f, "}}")
    }
}

/// The dilation `b·A` of a sequence in F_p.
pub fn dilate(b: u32, seq: &ElementSequence) -> Result<ElementSequence> {
    let spec = seq.spec();
    ensure!(spec.d() == 1, Domain, "dilation is defined for sequences in F_p (d = {})", spec.d());
    ensure!(!b.is_multiple_of(spec.p()), Input, "dilation by zero is not allowed");
    Ok(seq.map_indices(|x| spec.scale(b, x)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiset_semantics() {
        let s = GroupSpec::new(7, 1).unwrap();
        let a = ElementSequence::from_indices(s, [3, 1, 3]).unwrap();
        let b = ElementSequence::from_pairs(s, [(1, 1), (3, 2)]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 3);
        assert_eq!(a.distinct_len(), 2);
        assert_eq!(a.to_vec(), vec![1, 3, 3]);
        let c = a.difference(&ElementSequence::from_indices(s, [3]).unwrap()).unwrap();
        assert_eq!(c.to_vec(), vec![1, 3]);
        assert!(a.difference(&ElementSequence::from_indices(s, [2]).unwrap()).is_err());
    }

    #[test]
    fn dilation_examples() {
        let s7 = GroupSpec::new(7, 1).unwrap();
        let a = ElementSequence::from_indices(s7, [1, 3]).unwrap();
        assert_eq!(dilate(1, &a).unwrap(), a);
        assert_eq!(dilate(2, &a).unwrap().to_vec(), vec![2, 6]);
        let s5 = GroupSpec::new(5, 1).unwrap();
        let b = ElementSequence::from_pairs(s5, [(1, 4)]).unwrap();
        assert_eq!(dilate(3, &b).unwrap().entries(), &[(3, 4)]);
        assert!(dilate(0, &b).is_err());
        assert!(dilate(5, &b).is_err());
        let s2 = GroupSpec::new(5, 2).unwrap();
        assert!(dilate(2, &ElementSequence::new(s2)).is_err());
    }

    #[test]
    fn richest_hyperplane_of_a_line() {
        let s = GroupSpec::new(5, 2).unwrap();
        let line: Vec<usize> = (0..5).map(|y| s.encode(&[2, y]).unwrap()).collect();
        let mut seq = ElementSequence::from_indices(s, line.iter().copied()).unwrap();
        seq.push(s.encode(&[0, 0]).unwrap(), 1);
        let (flat, count) = seq.richest_hyperplane().unwrap();
        assert_eq!(count, 5);
        for x in line {
            assert!(flat.contains_index(x));
        }
    }

    #[test]
    fn hyperplanes_in_dimension_one_are_points() {
        let s = GroupSpec::new(7, 1).unwrap();
        let seq = ElementSequence::from_pairs(s, [(2, 3), (5, 4)]).unwrap();
        let (flat, count) = seq.richest_hyperplane().unwrap();
        assert_eq!((flat.translate().index(), count), (5, 4));
    }
}
