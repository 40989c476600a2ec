//! Bit-indexed subsets of a poset carrier.

use core::fmt;

/// Largest carrier a [`SubsetMask`] can index.
pub const MAX_ELEMS: usize = 32;

/// A subset of `{0, .., n-1}` stored as a bit set. Bit `i` set means element `i`
/// is a member. The owning carrier size is not stored; callers keep masks within
/// the carrier they came from.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct SubsetMask(pub u32);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    /// The full carrier `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_ELEMS);
        if n >= 32 {
            SubsetMask(u32::MAX)
        } else {
            SubsetMask((1u32 << n) - 1)
        }
    }

    pub fn singleton(x: usize) -> Self {
        debug_assert!(x < MAX_ELEMS);
        SubsetMask(1 << x)
    }

    pub fn from_elems<I: IntoIterator<Item = usize>>(elems: I) -> Self {
        elems.into_iter().fold(SubsetMask::EMPTY, |m, x| m.with(x))
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn contains(self, x: usize) -> bool {
        x < MAX_ELEMS && self.0 & (1 << x) != 0
    }

    #[inline]
    pub fn with(self, x: usize) -> Self {
        SubsetMask(self.0 | (1 << x))
    }

    #[inline]
    pub fn without(self, x: usize) -> Self {
        SubsetMask(self.0 & !(1 << x))
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_singleton(self) -> bool {
        self.0.count_ones() == 1
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        SubsetMask(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        SubsetMask(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        SubsetMask(self.0 & !other.0)
    }

    /// Complement relative to the carrier of size `n`.
    #[inline]
    pub fn complement(self, n: usize) -> Self {
        SubsetMask(!self.0 & Self::full(n).0)
    }

    #[inline]
    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn meets(self, other: Self) -> bool {
        self.0 & other.0 != 0
    }

    /// Smallest member, if any.
    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    /// Members in ascending order.
    pub fn iter(self) -> Elems {
        Elems(self.0)
    }

    /// All subsets of `self`, including the empty set, in ascending mask order.
    pub fn subsets(self) -> Subsets {
        Subsets { of: self.0, next: Some(0) }
    }

    /// Nonempty subsets of `self`, ordered by ascending cardinality and, within
    /// one cardinality, by ascending mask value.
    pub fn nonempty_subsets_by_size(self) -> alloc::vec::Vec<SubsetMask> {
        let mut subs: alloc::vec::Vec<SubsetMask> = self.subsets().filter(|s| !s.is_empty()).collect();
        subs.sort_by_key(|s| (s.len(), s.0));
        subs
    }

    /// Every subset of the carrier `{0, .., n-1}` in ascending mask order.
    pub fn all(n: usize) -> Subsets {
        Self::full(n).subsets()
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for SubsetMask {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self::from_elems(iter)
    }
}

impl IntoIterator for SubsetMask {
    type Item = usize;
    type IntoIter = Elems;

    fn into_iter(self) -> Elems {
        self.iter()
    }
}

pub struct Elems(u32);

impl Iterator for Elems {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let x = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(x as usize)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for Elems {}

/// Submask enumeration in ascending order.
pub struct Subsets {
    of: u32,
    next: Option<u32>,
}

impl Iterator for Subsets {
    type Item = SubsetMask;

    fn next(&mut self) -> Option<SubsetMask> {
        let cur = self.next?;
        // next submask above `cur`: ((cur | !of) + 1) & of, wrapping to 0 at the end
        let succ = (cur | !self.of).wrapping_add(1) & self.of;
        self.next = if succ == 0 { None } else { Some(succ) };
        Some(SubsetMask(cur))
    }
}
