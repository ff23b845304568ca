//! Dense membership sets over the whole group.

use crate::error::{ensure, Result};
use crate::group::{add_digits, GroupSpec};

/// A subset of F_p^d stored as one bit per element, indexed canonically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IndicatorSet {
    spec: GroupSpec,
    words: Vec<u64>,
    card: usize,
}

impl std::fmt::Debug for IndicatorSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IndicatorSet")
            .field("p", &self.spec.p())
            .field("d", &self.spec.d())
            .field("members", &self.iter().collect::<Vec<_>>())
            .finish()
    }
}

impl IndicatorSet {
    pub fn empty(spec: GroupSpec) -> Self {
        IndicatorSet { spec, words: vec![0; spec.order().div_ceil(64)], card: 0 }
    }

    pub fn full(spec: GroupSpec) -> Self {
        let mut s = Self::empty(spec);
        let n = spec.order();
        for w in s.words.iter_mut() {
            *w = !0;
        }
        if !n.is_multiple_of(64) {
            *s.words.last_mut().unwrap() = (1u64 << (n % 64)) - 1;
        }
        s.card = n;
        s
    }

    pub fn singleton(spec: GroupSpec, x: usize) -> Self {
        let mut s = Self::empty(spec);
        s.insert(x);
        s
    }

    pub fn from_indices(spec: GroupSpec, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut s = Self::empty(spec);
        for x in indices {
            ensure!(x < spec.order(), Input, "index {x} outside a group of order {}", spec.order());
            s.insert(x);
        }
        Ok(s)
    }

    pub fn spec(&self) -> GroupSpec {
        self.spec
    }

    pub fn len(&self) -> usize {
        self.card
    }

    pub fn is_empty(&self) -> bool {
        self.card == 0
    }

    pub fn is_full(&self) -> bool {
        self.card == self.spec.order()
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        x < self.spec.order() && self.words[x >> 6] >> (x & 63) & 1 == 1
    }

    /// Returns whether `x` was newly inserted.
    pub fn insert(&mut self, x: usize) -> bool {
        assert!(x < self.spec.order(), "index {x} outside the group");
        let mask = 1u64 << (x & 63);
        let w = &mut self.words[x >> 6];
        if *w & mask == 0 {
            *w |= mask;
            self.card += 1;
            true
        } else {
            false
        }
    }

    pub fn remove(&mut self, x: usize) -> bool {
        if !self.contains(x) {
            return false;
        }
        self.words[x >> 6] &= !(1u64 << (x & 63));
        self.card -= 1;
        true
    }

    pub fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
        self.card = 0;
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + bit)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    fn check_same(&self, other: &IndicatorSet) -> Result<()> {
        ensure!(
            self.spec == other.spec,
            Input,
            "sets live in different groups (F_{}^{} vs F_{}^{})",
            self.spec.p(),
            self.spec.d(),
            other.spec.p(),
            other.spec.d()
        );
        Ok(())
    }

    fn recount(&mut self) {
        self.card = self.words.iter().map(|w| w.count_ones() as usize).sum();
    }

    pub fn union_with(&mut self, other: &IndicatorSet) -> Result<()> {
        self.check_same(other)?;
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
        self.recount();
        Ok(())
    }

    pub fn intersect_with(&mut self, other: &IndicatorSet) -> Result<()> {
        self.check_same(other)?;
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
        self.recount();
        Ok(())
    }

    pub fn is_subset(&self, other: &IndicatorSet) -> bool {
        self.spec == other.spec && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// `|self \ other|`.
    pub fn difference_len(&self, other: &IndicatorSet) -> usize {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & !b).count_ones() as usize).sum()
    }

    /// `self + a`.
    pub fn translated(&self, a: usize) -> IndicatorSet {
        let mut out = IndicatorSet::empty(self.spec);
        self.translate_or_into(a, &mut out);
        out
    }

    /// `dst ∪= self + a`.
    ///
    /// The group is laid out as `p^(d-1)` rows of `p` contiguous bits (coordinate
    /// 0 varies fastest). Translation moves whole rows by the high coordinates
    /// of `a` and rotates inside each row by its coordinate 0.
    pub fn translate_or_into(&self, a: usize, dst: &mut IndicatorSet) {
        debug_assert_eq!(self.spec, dst.spec);
        let p = self.spec.p() as usize;
        let rows = self.spec.order() / p;
        let shift = a % p;
        let high = a / p;
        let digits = self.spec.d() - 1;
        for r in 0..rows {
            let src = r * p;
            if bits_empty(&self.words, src, p) {
                continue;
            }
            let target_row = if digits == 0 { 0 } else { add_digits(r, high, p, digits) };
            let dst_start = target_row * p;
            or_range(&self.words, src, &mut dst.words, dst_start + shift, p - shift);
            or_range(&self.words, src + p - shift, &mut dst.words, dst_start, shift);
        }
        dst.recount();
    }

    /// `self ∪ (self + a) ∪ {a}`: one step of the subsequence-sum recursion.
    pub fn extend_with(&self, a: usize) -> IndicatorSet {
        let mut out = self.clone();
        self.translate_or_into(a, &mut out);
        out.insert(a);
        out
    }

    /// `{x - y}`-free test helper: `{-x : x ∈ self}`.
    pub fn negated(&self) -> IndicatorSet {
        let mut out = IndicatorSet::empty(self.spec);
        for x in self.iter() {
            out.insert(self.spec.neg(x));
        }
        out
    }
}

#[inline]
fn get_bits(words: &[u64], start: usize, n: usize) -> u64 {
    let w = start >> 6;
    let off = start & 63;
    let mut v = words[w] >> off;
    if off != 0 && off + n > 64 {
        v |= words[w + 1] << (64 - off);
    }
    if n < 64 {
        v &= (1u64 << n) - 1;
    }
    v
}

#[inline]
fn or_bits(words: &mut [u64], start: usize, n: usize, v: u64) {
    let w = start >> 6;
    let off = start & 63;
    words[w] |= v << off;
    if off != 0 && off + n > 64 {
        words[w + 1] |= v >> (64 - off);
    }
}

fn or_range(src: &[u64], from: usize, dst: &mut [u64], to: usize, len: usize) {
    let mut k = 0;
    while k < len {
        let take = (len - k).min(64);
        let v = get_bits(src, from + k, take);
        if v != 0 {
            or_bits(dst, to + k, take, v);
        }
        k += take;
    }
}

fn bits_empty(words: &[u64], from: usize, len: usize) -> bool {
    let mut k = 0;
    while k < len {
        let take = (len - k).min(64);
        if get_bits(words, from + k, take) != 0 {
            return false;
        }
        k += take;
    }
    true
}

/// Exact sumset `{x + y : x ∈ xs, y ∈ ys}`.
pub fn sumset(xs: &IndicatorSet, ys: &IndicatorSet) -> Result<IndicatorSet> {
    xs.check_same(ys)?;
    let (small, large) = if xs.len() <= ys.len() { (xs, ys) } else { (ys, xs) };
    let mut out = IndicatorSet::empty(xs.spec);
    for x in small.iter() {
        large.translate_or_into(x, &mut out);
        if out.is_full() {
            break;
        }
    }
    Ok(out)
}
