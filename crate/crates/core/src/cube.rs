//! Subsets of `[n]` as bitmasks and intervals `[lo:hi]` of the hypercube.
//!
//! Element `i` of `[n] = {1, ..., n}` is stored in bit `i - 1`. A single mask
//! type stands for vertices, direction sets and outmap values alike.

use std::fmt;
use std::str::FromStr;

use crate::error::{Result, UsoError};

/// Largest dimension supported by the mask arithmetic.
pub const MAX_DIM: u32 = 30;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SubsetMask(u32);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    #[inline]
    pub const fn new(bits: u32) -> Self {
        SubsetMask(bits)
    }

    #[inline]
    pub const fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub const fn index(self) -> usize {
        self.0 as usize
    }

    /// The full set `[n]`.
    #[inline]
    pub const fn full(n: u32) -> Self {
        if n >= 32 {
            SubsetMask(u32::MAX)
        } else {
            SubsetMask((1u32 << n) - 1)
        }
    }

    /// The singleton `{lambda}`; `lambda` is 1-based.
    #[inline]
    pub const fn singleton(lambda: u32) -> Self {
        SubsetMask(1 << (lambda - 1))
    }

    /// Builds a mask from 1-based elements.
    pub fn from_elements<I: IntoIterator<Item = u32>>(elements: I) -> Result<Self> {
        let mut bits = 0u32;
        for e in elements {
            if e == 0 || e > MAX_DIM {
                return Err(UsoError::DirectionOutOfRange { lambda: e, n: MAX_DIM });
            }
            bits |= 1 << (e - 1);
        }
        Ok(SubsetMask(bits))
    }

    /// 1-based elements in increasing order.
    pub fn elements(self) -> impl Iterator<Item = u32> {
        let bits = self.0;
        (0..32).filter(move |i| bits >> i & 1 == 1).map(|i| i + 1)
    }

    #[inline]
    pub const fn has(self, lambda: u32) -> bool {
        self.0 >> (lambda - 1) & 1 == 1
    }

    #[inline]
    pub const fn is_subset_of(self, other: SubsetMask) -> bool {
        self.0 & other.0 == self.0
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn len(self) -> u32 {
        self.0.count_ones()
    }

    #[inline]
    pub const fn union(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 | other.0)
    }

    #[inline]
    pub const fn intersection(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 & other.0)
    }

    #[inline]
    pub const fn difference(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 & !other.0)
    }

    #[inline]
    pub const fn sym_diff(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 ^ other.0)
    }

    /// True iff only the low `n` bits may be set.
    #[inline]
    pub const fn fits(self, n: u32) -> bool {
        self.is_subset_of(SubsetMask::full(n))
    }

    /// Iterates over all subsets of `self`, starting with the empty set.
    pub fn subsets(self) -> Submasks {
        Submasks {
            of: self.0,
            next: Some(0),
        }
    }
}

/// `a ⊕ b`, the symmetric difference.
#[inline]
pub fn sym_diff(a: SubsetMask, b: SubsetMask) -> SubsetMask {
    a.sym_diff(b)
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Set notation, e.g. `{1,3}`; the empty set renders as `{}`.
impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

/// Accepts either a decimal bitmask (`5`) or set notation (`{1,3}`, `{}`).
impl FromStr for SubsetMask {
    type Err = UsoError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
            let inner = inner.trim();
            if inner.is_empty() {
                return Ok(SubsetMask::EMPTY);
            }
            let elements = inner
                .split(',')
                .map(|e| {
                    e.trim()
                        .parse::<u32>()
                        .map_err(|_| UsoError::Parse(format!("bad set element {e:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            SubsetMask::from_elements(elements)
        } else {
            s.parse::<u32>()
                .map(SubsetMask)
                .map_err(|_| UsoError::Parse(format!("bad mask {s:?}")))
        }
    }
}

impl From<SubsetMask> for u32 {
    fn from(m: SubsetMask) -> u32 {
        m.0
    }
}

/// Enumerates the submasks of a fixed mask in increasing numeric order.
#[derive(Clone, Debug)]
pub struct Submasks {
    of: u32,
    next: Option<u32>,
}

impl Iterator for Submasks {
    type Item = SubsetMask;

    fn next(&mut self) -> Option<SubsetMask> {
        let cur = self.next?;
        // Increment restricted to the bits of `of`.
        self.next = if cur == self.of {
            None
        } else {
            Some((cur | !self.of).wrapping_add(1) & self.of)
        };
        Some(SubsetMask(cur))
    }
}

/// The interval `[lo:hi] = {w | lo ⊆ w ⊆ hi}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Subcube {
    lo: SubsetMask,
    hi: SubsetMask,
}

impl Subcube {
    pub fn new(lo: SubsetMask, hi: SubsetMask) -> Result<Self> {
        if !lo.is_subset_of(hi) {
            return Err(UsoError::InvalidSubcube {
                lo: lo.bits(),
                hi: hi.bits(),
            });
        }
        Ok(Subcube { lo, hi })
    }

    /// The whole cube `[∅:[n]]`.
    pub fn full(n: u32) -> Self {
        Subcube {
            lo: SubsetMask::EMPTY,
            hi: SubsetMask::full(n),
        }
    }

    /// The single vertex `[v:v]`.
    pub fn vertex(v: SubsetMask) -> Self {
        Subcube { lo: v, hi: v }
    }

    pub(crate) fn from_lo_carrier(lo: SubsetMask, carrier: SubsetMask) -> Self {
        debug_assert!(lo.intersection(carrier).is_empty());
        Subcube {
            lo,
            hi: lo.union(carrier),
        }
    }

    #[inline]
    pub fn lo(&self) -> SubsetMask {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> SubsetMask {
        self.hi
    }

    /// `carr [lo:hi] = hi \ lo`.
    #[inline]
    pub fn carrier(&self) -> SubsetMask {
        self.hi.sym_diff(self.lo)
    }

    #[inline]
    pub fn dim(&self) -> u32 {
        self.carrier().len()
    }

    #[inline]
    pub fn contains(&self, w: SubsetMask) -> bool {
        self.lo.is_subset_of(w) && w.is_subset_of(self.hi)
    }

    pub fn vertices(&self) -> impl Iterator<Item = SubsetMask> {
        let lo = self.lo;
        self.carrier().subsets().map(move |c| lo.union(c))
    }

    /// Splits along `lambda ∈ carrier` into the facets without and with `lambda`.
    pub fn split(&self, lambda: u32) -> Result<(Subcube, Subcube)> {
        if lambda == 0 || lambda > MAX_DIM || !self.carrier().has(lambda) {
            return Err(UsoError::DirectionOutOfRange {
                lambda,
                n: self.hi.len(),
            });
        }
        let e = SubsetMask::singleton(lambda);
        Ok((
            Subcube {
                lo: self.lo,
                hi: self.hi.difference(e),
            },
            Subcube {
                lo: self.lo.union(e),
                hi: self.hi,
            },
        ))
    }
}

impl fmt::Display for Subcube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}]", self.lo, self.hi)
    }
}

pub(crate) fn check_dim(n: u32, cap: u32, what: &'static str) -> Result<()> {
    if n == 0 {
        return Err(UsoError::ZeroDimension);
    }
    if n > cap {
        return Err(UsoError::DimensionOverCap { n, cap, what });
    }
    Ok(())
}

/// All `3^n` subcubes of the `n`-cube, each exactly once: `lo` ranges over
/// `2^[n]` and the carrier over the subsets of `[n] \ lo`.
pub fn enumerate_subcubes(n: u32) -> Result<impl Iterator<Item = Subcube>> {
    check_dim(n, MAX_DIM, "subcube enumeration")?;
    let full = SubsetMask::full(n);
    Ok(full.subsets().flat_map(move |lo| {
        full.difference(lo)
            .subsets()
            .map(move |carrier| Subcube::from_lo_carrier(lo, carrier))
    }))
}

/// The lower and upper `lambda`-facets `[∅ : [n]\{λ}]` and `[{λ} : [n]]`.
pub fn lambda_facets(n: u32, lambda: u32) -> Result<(Subcube, Subcube)> {
    check_dim(n, MAX_DIM, "facets")?;
    if lambda == 0 || lambda > n {
        return Err(UsoError::DirectionOutOfRange { lambda, n });
    }
    Subcube::full(n).split(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn set(e: &[u32]) -> SubsetMask {
        SubsetMask::from_elements(e.iter().copied()).unwrap()
    }

    #[test]
    fn sym_diff_examples() {
        assert_eq!(sym_diff(set(&[1, 2]), set(&[2, 3])), set(&[1, 3]));
        assert_eq!(sym_diff(set(&[2, 4]), SubsetMask::EMPTY), set(&[2, 4]));
        assert_eq!(sym_diff(set(&[1]), set(&[1])), SubsetMask::EMPTY);
    }

    #[test]
    fn bit_encoding() {
        assert_eq!(set(&[1]).bits(), 1);
        assert_eq!(set(&[1, 3]).bits(), 5);
        assert_eq!(set(&[1, 2, 3]), SubsetMask::full(3));
        assert!(SubsetMask::from_elements([0]).is_err());
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(set(&[1, 3]).to_string(), "{1,3}");
        assert_eq!(SubsetMask::EMPTY.to_string(), "{}");
        assert_eq!("{1, 3}".parse::<SubsetMask>().unwrap(), set(&[1, 3]));
        assert_eq!("{}".parse::<SubsetMask>().unwrap(), SubsetMask::EMPTY);
        assert_eq!("6".parse::<SubsetMask>().unwrap(), set(&[2, 3]));
        assert!("{1,x}".parse::<SubsetMask>().is_err());
        assert!("-1".parse::<SubsetMask>().is_err());
    }

    #[test]
    fn contains_examples() {
        let c = Subcube::new(SubsetMask::EMPTY, set(&[1, 2])).unwrap();
        assert!(c.contains(set(&[2])));
        let c = Subcube::new(set(&[1]), set(&[1, 3])).unwrap();
        assert!(!c.contains(set(&[3])));
        let v = set(&[2, 5]);
        assert!(Subcube::vertex(v).contains(v));
    }

    #[test]
    fn carrier_examples() {
        assert_eq!(Subcube::full(3).carrier(), set(&[1, 2, 3]));
        assert_eq!(Subcube::new(set(&[2]), set(&[1, 2])).unwrap().carrier(), set(&[1]));
        assert_eq!(Subcube::vertex(set(&[1, 3])).carrier(), SubsetMask::EMPTY);
    }

    #[test]
    fn invalid_subcube_rejected() {
        assert!(Subcube::new(set(&[1]), set(&[2])).is_err());
    }

    #[test]
    fn subcube_counts() {
        let one: Vec<_> = enumerate_subcubes(1).unwrap().collect();
        assert_eq!(one.len(), 3);
        let expected = [
            Subcube::vertex(SubsetMask::EMPTY),
            Subcube::vertex(set(&[1])),
            Subcube::full(1),
        ];
        for c in expected {
            assert!(one.contains(&c));
        }
        assert_eq!(enumerate_subcubes(2).unwrap().count(), 9);
        assert_eq!(enumerate_subcubes(3).unwrap().count(), 27);
        for n in 1..=7 {
            let all: HashSet<_> = enumerate_subcubes(n).unwrap().collect();
            assert_eq!(all.len(), 3usize.pow(n));
        }
        assert!(enumerate_subcubes(0).is_err());
        assert!(enumerate_subcubes(MAX_DIM + 1).is_err());
    }

    #[test]
    fn facet_examples() {
        let (lo, up) = lambda_facets(3, 3).unwrap();
        assert_eq!(lo, Subcube::new(SubsetMask::EMPTY, set(&[1, 2])).unwrap());
        assert_eq!(up, Subcube::new(set(&[3]), set(&[1, 2, 3])).unwrap());
        let (lo, up) = lambda_facets(1, 1).unwrap();
        assert_eq!(lo, Subcube::vertex(SubsetMask::EMPTY));
        assert_eq!(up, Subcube::vertex(set(&[1])));
        let (lo, up) = lambda_facets(2, 1).unwrap();
        assert_eq!(lo, Subcube::new(SubsetMask::EMPTY, set(&[2])).unwrap());
        assert_eq!(up, Subcube::new(set(&[1]), set(&[1, 2])).unwrap());
        assert!(lambda_facets(3, 0).is_err());
        assert!(lambda_facets(3, 4).is_err());
    }

    #[test]
    fn facets_partition_vertices() {
        for n in 1..=6 {
            for lambda in 1..=n {
                let (lo, up) = lambda_facets(n, lambda).unwrap();
                for v in SubsetMask::full(n).subsets() {
                    assert!(lo.contains(v) ^ up.contains(v));
                }
            }
        }
    }

    #[test]
    fn submasks_enumerate_all() {
        let m = SubsetMask::new(0b1011);
        let subs: Vec<u32> = m.subsets().map(|s| s.bits()).collect();
        assert_eq!(subs, vec![0, 1, 2, 3, 8, 9, 10, 11]);
        assert_eq!(SubsetMask::EMPTY.subsets().count(), 1);
    }

    proptest! {
        #[test]
        fn sym_diff_involution(x in 0u32..(1 << 30), y in 0u32..(1 << 30)) {
            let (x, y) = (SubsetMask::new(x), SubsetMask::new(y));
            prop_assert_eq!(sym_diff(sym_diff(x, y), y), x);
            prop_assert_eq!(sym_diff(y, sym_diff(y, x)), x);
        }

        #[test]
        fn contains_via_carrier(lo in 0u32..256, extra in 0u32..256, w in 0u32..256) {
            let lo = SubsetMask::new(lo);
            let c = Subcube::new(lo, lo.union(SubsetMask::new(extra))).unwrap();
            let w = SubsetMask::new(w);
            prop_assert_eq!(c.contains(w), w.sym_diff(lo).is_subset_of(c.carrier()));
        }

        #[test]
        fn display_parse_roundtrip(bits in 0u32..(1 << 30)) {
            let m = SubsetMask::new(bits);
            prop_assert_eq!(m.to_string().parse::<SubsetMask>().unwrap(), m);
        }
    }
}
