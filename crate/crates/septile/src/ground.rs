//! Ground set `[n]`, subsets as machine words, and duplicate-free collections.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

/// The ground set `[n] = {1, 2, ..., n}`, `1 <= n <= 64`.
///
/// `n` is capped at 64 so that a subset always fits one machine word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ground {
    n: u8,
}

impl Ground {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > 64 {
            return Err(Error::GroundOutOfRange(n));
        }
        Ok(Ground { n: n as u8 })
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    /// Bitmask with all of `1..=n` present.
    pub fn full(&self) -> Subset {
        if self.n == 64 {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << self.n) - 1)
        }
    }

    pub fn contains(&self, s: Subset) -> bool {
        s.0 & !self.full().0 == 0
    }

    /// All `2^n` subsets in ascending bit-value order. Desk scale only.
    pub fn subsets(&self) -> impl Iterator<Item = Subset> {
        assert!(self.n <= 24, "full power set enumeration needs small n");
        (0..(1u64 << self.n)).map(Subset)
    }

    /// Elements `1..=n`.
    pub fn elems(&self) -> impl Iterator<Item = u8> {
        1..=self.n
    }

    pub fn check_same(&self, other: &Ground) -> Result<()> {
        if self.n != other.n {
            return Err(Error::GroundMismatch(self.n, other.n));
        }
        Ok(())
    }

    /// The rim vertices of the zonogon/zonotope: prefixes `[i]` and suffixes
    /// `{i..n}` of the ground, including the empty set and all of `[n]`.
    pub fn rim_subsets(&self) -> Vec<Subset> {
        let mut out = vec![Subset::EMPTY];
        let mut s = Subset::EMPTY;
        for i in 1..=self.n {
            s = s.insert(i);
            out.push(s);
        }
        let mut s = Subset::EMPTY;
        for i in (2..=self.n).rev() {
            s = s.insert(i);
            out.push(s);
        }
        out
    }
}

/// A subset of `[n]` encoded as a bit word: element `i` lives at bit `i - 1`.
///
/// `min`/`max` of the empty set are 0 by convention, so both are total.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(pub u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_elems(elems: &[u8]) -> Self {
        let mut bits = 0u64;
        for &e in elems {
            assert!((1..=64).contains(&e), "element out of 1..=64");
            bits |= 1u64 << (e - 1);
        }
        Subset(bits)
    }

    pub fn singleton(e: u8) -> Self {
        Subset::from_elems(&[e])
    }

    pub fn bits(&self) -> u64 {
        self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn card(&self) -> u32 {
        self.0.count_ones()
    }

    pub fn contains(&self, e: u8) -> bool {
        debug_assert!((1..=64).contains(&e));
        self.0 >> (e - 1) & 1 == 1
    }

    /// `min(X)`, with `min(EMPTY) = 0`.
    pub fn min_elem(&self) -> u8 {
        if self.0 == 0 {
            0
        } else {
            self.0.trailing_zeros() as u8 + 1
        }
    }

    /// `max(X)`, with `max(EMPTY) = 0`.
    pub fn max_elem(&self) -> u8 {
        if self.0 == 0 {
            0
        } else {
            64 - self.0.leading_zeros() as u8
        }
    }

    pub fn insert(&self, e: u8) -> Self {
        debug_assert!(!self.contains(e), "insert of element already present");
        Subset(self.0 | 1u64 << (e - 1))
    }

    pub fn remove(&self, e: u8) -> Self {
        debug_assert!(self.contains(e), "remove of element not present");
        Subset(self.0 & !(1u64 << (e - 1)))
    }

    pub fn union(&self, other: Subset) -> Self {
        Subset(self.0 | other.0)
    }

    pub fn inter(&self, other: Subset) -> Self {
        Subset(self.0 & other.0)
    }

    /// `A - B`.
    pub fn diff(&self, other: Subset) -> Self {
        Subset(self.0 & !other.0)
    }

    pub fn is_subset_of(&self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    /// Elements strictly below `e`.
    pub fn below(&self, e: u8) -> Subset {
        if e <= 1 {
            Subset(0)
        } else {
            Subset(self.0 & ((1u64 << (e - 1)) - 1))
        }
    }

    /// Elements strictly above `e`.
    pub fn above(&self, e: u8) -> Subset {
        if e >= 64 {
            Subset(0)
        } else {
            Subset(self.0 & !((1u64 << e) - 1))
        }
    }

    pub fn complement_in(&self, ground: Ground) -> Subset {
        Subset(!self.0 & ground.full().0)
    }

    pub fn elems(&self) -> impl Iterator<Item = u8> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let e = bits.trailing_zeros() as u8 + 1;
                bits &= bits - 1;
                Some(e)
            }
        })
    }

    /// Relabel every element by `sigma`; `sigma` must be injective on `1..=n`.
    pub fn relabel(&self, sigma: impl Fn(u8) -> u8) -> Subset {
        let mut out = 0u64;
        for e in self.elems() {
            out |= 1u64 << (sigma(e) - 1);
        }
        Subset(out)
    }
}

impl fmt::Display for Subset {
    /// Dotted element list, `-` for the empty set: `{1,3,12}` prints as `1.3.12`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("-");
        }
        let mut first = true;
        for e in self.elems() {
            if !first {
                f.write_str(".")?;
            }
            write!(f, "{e}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A duplicate-free set of subsets of a fixed ground, iterated in ascending
/// bit-value order and with O(1) membership tests.
#[derive(Clone)]
pub struct Collection {
    ground: Ground,
    members: Vec<Subset>,
    index: HashSet<u64>,
}

impl Collection {
    pub fn new(ground: Ground) -> Self {
        Collection { ground, members: Vec::new(), index: HashSet::new() }
    }

    pub fn from_subsets(ground: Ground, subsets: impl IntoIterator<Item = Subset>) -> Result<Self> {
        let mut c = Collection::new(ground);
        for s in subsets {
            c.insert(s)?;
        }
        Ok(c)
    }

    /// The intervals `[i..j]` of `[n]` plus the empty set; the spectrum of the
    /// standard tiling.
    pub fn intervals(ground: Ground) -> Self {
        let mut c = Collection::new(ground);
        c.insert(Subset::EMPTY).unwrap();
        for i in 1..=ground.n() {
            let mut s = Subset::EMPTY;
            for j in i..=ground.n() {
                s = s.insert(j);
                c.insert(s).unwrap();
            }
        }
        c
    }

    /// Complements of intervals; the spectrum of the anti-standard tiling.
    pub fn co_intervals(ground: Ground) -> Self {
        let ints = Collection::intervals(ground);
        Collection::from_subsets(ground, ints.iter().map(|s| s.complement_in(ground))).unwrap()
    }

    pub fn ground(&self) -> Ground {
        self.ground
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.index.contains(&s.0)
    }

    /// Insert; duplicates are rejected as an error.
    pub fn insert(&mut self, s: Subset) -> Result<()> {
        if !self.ground.contains(s) {
            return Err(Error::SubsetOutOfGround { subset: s, n: self.ground.n() });
        }
        if !self.index.insert(s.0) {
            return Err(Error::Internal(format!("duplicate member {s}")));
        }
        let pos = self.members.partition_point(|m| *m < s);
        self.members.insert(pos, s);
        Ok(())
    }

    pub fn remove(&mut self, s: Subset) -> bool {
        if self.index.remove(&s.0) {
            let pos = self.members.partition_point(|m| *m < s);
            debug_assert_eq!(self.members[pos], s);
            self.members.remove(pos);
            true
        } else {
            false
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Subset> + '_ {
        self.members.iter().copied()
    }

    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    pub fn is_subcollection_of(&self, other: &Collection) -> bool {
        self.iter().all(|s| other.contains(s))
    }

    /// Image under elementwise complementation.
    pub fn complement(&self) -> Collection {
        Collection::from_subsets(self.ground, self.iter().map(|s| s.complement_in(self.ground)))
            .unwrap()
    }
}

impl PartialEq for Collection {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.members == other.members
    }
}

impl Eq for Collection {}

impl fmt::Debug for Collection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Collection[n={}]{{", self.ground.n())?;
        for (t, s) in self.iter().enumerate() {
            if t > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn min_max_conventions() {
        assert_eq!(Subset::EMPTY.min_elem(), 0);
        assert_eq!(Subset::EMPTY.max_elem(), 0);
        let s = Subset::from_elems(&[2, 5, 64]);
        assert_eq!(s.min_elem(), 2);
        assert_eq!(s.max_elem(), 64);
        assert_eq!(s.card(), 3);
    }

    #[test]
    fn intervals_of_3() {
        let g = Ground::new(3).unwrap();
        let ints = Collection::intervals(g);
        let want: Vec<Subset> = [&[][..], &[1], &[2], &[3], &[1, 2], &[2, 3], &[1, 2, 3]]
            .iter()
            .map(|e| Subset::from_elems(e))
            .collect();
        assert_eq!(ints.len(), 7);
        for w in want {
            assert!(ints.contains(w));
        }
        // iteration is ascending by bit value
        let listed: Vec<u64> = ints.iter().map(|s| s.bits()).collect();
        let mut sorted = listed.clone();
        sorted.sort_unstable();
        assert_eq!(listed, sorted);
    }

    #[test]
    fn co_intervals_are_complements() {
        let g = Ground::new(5).unwrap();
        let co = Collection::co_intervals(g);
        assert_eq!(co.len(), Collection::intervals(g).len());
        assert!(co.contains(Subset::EMPTY));
        assert!(co.contains(g.full()));
        assert!(co.contains(Subset::from_elems(&[1, 2, 4, 5]))); // complement of {3}
    }

    #[test]
    fn duplicate_insert_rejected() {
        let g = Ground::new(4).unwrap();
        let mut c = Collection::new(g);
        c.insert(Subset::from_elems(&[1, 3])).unwrap();
        assert!(c.insert(Subset::from_elems(&[1, 3])).is_err());
    }

    #[test]
    fn out_of_ground_rejected() {
        let g = Ground::new(4).unwrap();
        let mut c = Collection::new(g);
        assert!(c.insert(Subset::from_elems(&[5])).is_err());
    }
}
