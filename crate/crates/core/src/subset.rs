//! Subsets of a finite ground set `{0, .., n-1}` with `n <= 128`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

pub const MAX_ELEMENTS: usize = 128;

/// A subset of `{0, .., n-1}` stored as a bit word. Ordered by size, then by
/// sorted element list.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroundSubset {
    bits: u128,
    n: u8,
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u128 {
    if n >= 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

impl GroundSubset {
    fn check_n(n: usize) -> Result<()> {
        if n > MAX_ELEMENTS {
            return Err(Error::GroundSetTooLarge { n, max: MAX_ELEMENTS });
        }
        Ok(())
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::check_n(n)?;
        Ok(GroundSubset { bits: 0, n: n as u8 })
    }

    pub fn full(n: usize) -> Result<Self> {
        Self::check_n(n)?;
        Ok(GroundSubset { bits: full_mask(n), n: n as u8 })
    }

    pub fn from_bits(n: usize, bits: u128) -> Result<Self> {
        Self::check_n(n)?;
        if bits & !full_mask(n) != 0 {
            let element = 127 - (bits & !full_mask(n)).leading_zeros() as usize;
            return Err(Error::OutOfRange { element, n });
        }
        Ok(GroundSubset { bits, n: n as u8 })
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(n: usize, elements: I) -> Result<Self> {
        Self::check_n(n)?;
        let mut bits = 0u128;
        for e in elements {
            if e >= n {
                return Err(Error::OutOfRange { element: e, n });
            }
            bits |= 1u128 << e;
        }
        Ok(GroundSubset { bits, n: n as u8 })
    }

    pub fn singleton(n: usize, e: usize) -> Result<Self> {
        Self::from_elements(n, [e])
    }

    /// Caller guarantees `n <= 128` and `bits` inside the ground set.
    #[inline]
    pub(crate) fn raw(n: usize, bits: u128) -> Self {
        debug_assert!(n <= MAX_ELEMENTS && bits & !full_mask(n) == 0);
        GroundSubset { bits, n: n as u8 }
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn bits(&self) -> u128 {
        self.bits
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn contains(&self, e: usize) -> bool {
        e < 128 && self.bits >> e & 1 == 1
    }

    pub fn with(&self, e: usize) -> Self {
        assert!(e < self.universe(), "element {e} outside ground set");
        GroundSubset { bits: self.bits | 1u128 << e, n: self.n }
    }

    pub fn without(&self, e: usize) -> Self {
        if e >= 128 {
            return *self;
        }
        GroundSubset { bits: self.bits & !(1u128 << e), n: self.n }
    }

    pub fn union(&self, other: &Self) -> Self {
        GroundSubset { bits: self.bits | other.bits, n: self.n.max(other.n) }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        GroundSubset { bits: self.bits & other.bits, n: self.n.max(other.n) }
    }

    pub fn difference(&self, other: &Self) -> Self {
        GroundSubset { bits: self.bits & !other.bits, n: self.n.max(other.n) }
    }

    pub fn complement(&self) -> Self {
        GroundSubset { bits: !self.bits & full_mask(self.n as usize), n: self.n }
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn is_proper_subset_of(&self, other: &Self) -> bool {
        self.is_subset_of(other) && self.bits != other.bits
    }

    pub fn iter(&self) -> Elements {
        Elements { bits: self.bits }
    }

    pub fn elements(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn min_element(&self) -> Option<usize> {
        if self.bits == 0 {
            None
        } else {
            Some(self.bits.trailing_zeros() as usize)
        }
    }

    /// All subsets of `self`, in increasing bit-word order.
    pub fn subsets(&self) -> Subsets {
        Subsets { mask: self.bits, next: Some(0), n: self.n }
    }

    /// All subsets of `self` with exactly `size` elements, in lexicographic
    /// order of their sorted element lists.
    pub fn subsets_of_size(&self, size: usize) -> Combinations {
        Combinations::new(*self, size)
    }

    /// Compare sorted element lists lexicographically.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        let diff = self.bits ^ other.bits;
        if diff == 0 {
            return Ordering::Equal;
        }
        let low = diff & diff.wrapping_neg();
        if self.bits & low != 0 {
            // self has the smaller element at the first position that differs,
            // unless other is a prefix of self.
            let below = low - 1;
            if other.bits & !below == 0 {
                Ordering::Greater
            } else {
                Ordering::Less
            }
        } else {
            let below = low - 1;
            if self.bits & !below == 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        }
    }
}

impl Ord for GroundSubset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.lex_cmp(other))
    }
}

impl PartialOrd for GroundSubset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for GroundSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for GroundSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

pub struct Elements {
    bits: u128,
}

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.bits == 0 {
            return None;
        }
        let e = self.bits.trailing_zeros() as usize;
        self.bits &= self.bits - 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.bits.count_ones() as usize;
        (c, Some(c))
    }
}

pub struct Subsets {
    mask: u128,
    next: Option<u128>,
    n: u8,
}

impl Iterator for Subsets {
    type Item = GroundSubset;

    fn next(&mut self) -> Option<GroundSubset> {
        let cur = self.next?;
        self.next = if cur == self.mask {
            None
        } else {
            Some((cur.wrapping_sub(self.mask)) & self.mask)
        };
        Some(GroundSubset { bits: cur, n: self.n })
    }
}

pub struct Combinations {
    elems: Vec<usize>,
    idx: Vec<usize>,
    n: u8,
    done: bool,
}

impl Combinations {
    fn new(set: GroundSubset, size: usize) -> Self {
        let elems = set.elements();
        let done = size > elems.len();
        Combinations { idx: (0..size).collect(), elems, n: set.n, done }
    }
}

impl Iterator for Combinations {
    type Item = GroundSubset;

    fn next(&mut self) -> Option<GroundSubset> {
        if self.done {
            return None;
        }
        let mut bits = 0u128;
        for &i in &self.idx {
            bits |= 1u128 << self.elems[i];
        }
        let out = GroundSubset { bits, n: self.n };
        let k = self.idx.len();
        let len = self.elems.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < len - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let a = GroundSubset::from_elements(10, [1, 3, 5]).unwrap();
        let b = GroundSubset::from_elements(10, [3, 4]).unwrap();
        assert_eq!(a.union(&b).elements(), vec![1, 3, 4, 5]);
        assert_eq!(a.intersection(&b).elements(), vec![3]);
        assert_eq!(a.difference(&b).elements(), vec![1, 5]);
        assert_eq!(a.complement().len(), 7);
        assert!(GroundSubset::from_elements(4, [4]).is_err());
        assert!(GroundSubset::empty(129).is_err());
        let big = GroundSubset::full(128).unwrap();
        assert_eq!(big.len(), 128);
        assert_eq!(big.complement().len(), 0);
    }

    #[test]
    fn subsets_and_combinations() {
        let s = GroundSubset::from_elements(8, [0, 2, 5]).unwrap();
        assert_eq!(s.subsets().count(), 8);
        let c: Vec<_> = s.subsets_of_size(2).map(|x| x.elements()).collect();
        assert_eq!(c, vec![vec![0, 2], vec![0, 5], vec![2, 5]]);
        assert_eq!(s.subsets_of_size(0).count(), 1);
        assert_eq!(s.subsets_of_size(4).count(), 0);
    }

    #[test]
    fn lex_order() {
        let f = |v: &[usize]| GroundSubset::from_elements(10, v.iter().copied()).unwrap();
        assert_eq!(f(&[0, 5]).lex_cmp(&f(&[1, 2])), Ordering::Less);
        assert_eq!(f(&[1, 2]).lex_cmp(&f(&[1, 3])), Ordering::Less);
        assert_eq!(f(&[1]).lex_cmp(&f(&[1, 3])), Ordering::Less);
        assert_eq!(f(&[1, 3]).lex_cmp(&f(&[1])), Ordering::Greater);
        assert_eq!(f(&[2, 3]).lex_cmp(&f(&[1, 9])), Ordering::Greater);
    }
}
