use serde::{Deserialize, Serialize};

use super::field::Fp;
use super::prime::is_prime;
use crate::error::{ensure, Error, Result};

/// Default limit on `p^d`: one indicator set then takes at most 16 MiB.
pub const DEFAULT_UNIVERSE_CAP: usize = 1 << 27;

/// The ambient group F_p^d.
///
/// Elements are addressed by a canonical index `Σ coords[i]·p^i`, so
/// coordinate 0 is the fastest-varying digit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSpec {
    p: u32,
    d: u32,
    order: usize,
}

impl GroupSpec {
    pub fn new(p: u64, d: u32) -> Result<Self> {
        Self::with_cap(p, d, DEFAULT_UNIVERSE_CAP)
    }

    pub fn with_cap(p: u64, d: u32, cap: usize) -> Result<Self> {
        ensure!(d >= 1, Input, "dimension must be at least 1, got {d}");
        ensure!(is_prime(p), Input, "modulus {p} is not prime");
        let too_large = || Error::TooLarge {
            p,
            d,
            cap,
            hint: format!(
                "an indicator set would need {} MiB",
                (p as f64).powi(d as i32) / 8.0 / (1 << 20) as f64
            ),
        };
        let order = (p as usize).checked_pow(d).ok_or_else(too_large)?;
        if order > cap {
            return Err(too_large());
        }
        Ok(GroupSpec { p: p as u32, d, order })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn d(&self) -> usize {
        self.d as usize
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn field(&self) -> Fp {
        Fp::new(self.p)
    }

    pub fn zero(&self) -> usize {
        0
    }

    /// Mixed-radix encoding of a coordinate vector.
    pub fn encode(&self, coords: &[u32]) -> Result<usize> {
        ensure!(
            coords.len() == self.d(),
            Input,
            "expected {} coordinates, got {}",
            self.d,
            coords.len()
        );
        let mut index = 0usize;
        for &c in coords.iter().rev() {
            ensure!(c < self.p, Input, "residue {c} is out of range for p = {}", self.p);
            index = index * self.p as usize + c as usize;
        }
        Ok(index)
    }

    pub(crate) fn encode_unchecked(&self, coords: &[u32]) -> usize {
        coords.iter().rev().fold(0usize, |acc, &c| acc * self.p as usize + c as usize)
    }

    pub fn decode(&self, index: usize) -> Vec<u32> {
        let mut out = vec![0; self.d()];
        self.decode_into(index, &mut out);
        out
    }

    pub fn decode_into(&self, mut index: usize, out: &mut [u32]) {
        assert!(index < self.order, "index {index} outside a group of order {}", self.order);
        let p = self.p as usize;
        for c in out.iter_mut() {
            *c = (index % p) as u32;
            index /= p;
        }
    }

    pub fn element(&self, coords: &[u32]) -> Result<GroupElement> {
        let index = self.encode(coords)?;
        Ok(GroupElement { index, coords: coords.to_vec() })
    }

    pub fn element_at(&self, index: usize) -> GroupElement {
        GroupElement { index, coords: self.decode(index) }
    }

    pub fn contains_index(&self, index: usize) -> bool {
        index < self.order
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        add_digits(a, b, self.p as usize, self.d())
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        let p = self.p as usize;
        let (mut a, mut out, mut place) = (a, 0usize, 1usize);
        for _ in 0..self.d {
            let digit = a % p;
            a /= p;
            if digit != 0 {
                out += (p - digit) * place;
            }
            place *= p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// `k·a`, coordinate-wise.
    pub fn scale(&self, k: u32, a: usize) -> usize {
        let p = self.p as u64;
        let k = k as u64 % p;
        let (mut a, mut out, mut place) = (a, 0usize, 1usize);
        for _ in 0..self.d {
            let digit = (a as u64) % p;
            a /= p as usize;
            out += ((digit * k) % p) as usize * place;
            place *= p as usize;
        }
        out
    }

    /// `m·a` for an arbitrary non-negative multiplier.
    pub fn times(&self, m: usize, a: usize) -> usize {
        self.scale((m % self.p as usize) as u32, a)
    }

    /// Linear functional `normal · x`.
    pub fn dot(&self, normal: &[u32], x: usize) -> u32 {
        let p = self.p as u64;
        let mut x = x;
        let mut acc = 0u64;
        for &n in normal {
            acc += n as u64 * (x as u64 % p);
            x /= p as usize;
        }
        (acc % p) as u32
    }

    pub fn indices(&self) -> std::ops::Range<usize> {
        0..self.order
    }
}

#[inline]
pub(crate) fn add_digits(a: usize, b: usize, p: usize, digits: usize) -> usize {
    if digits == 1 {
        let s = a + b;
        return if s >= p { s - p } else { s };
    }
    let (mut a, mut b) = (a, b);
    let (mut out, mut place) = (0usize, 1usize);
    for _ in 0..digits {
        let mut s = a % p + b % p;
        if s >= p {
            s -= p;
        }
        out += s * place;
        a /= p;
        b /= p;
        place *= p;
    }
    out
}

/// A point of F_p^d, carrying both its coordinates and its canonical index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    index: usize,
    coords: Vec<u32>,
}

impl GroupElement {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }
}

impl std::fmt::Display for GroupElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Circular distance from `x` to 0 in F_p.
pub fn norm(spec: &GroupSpec, x: u32) -> Result<u32> {
    ensure!(spec.d() == 1, Domain, "the circular norm is defined on F_p only (d = {})", spec.d());
    ensure!(x < spec.p(), Input, "residue {x} is out of range for p = {}", spec.p());
    Ok(x.min(spec.p() - x))
}
