//! Subsets of the positive roots as 128-bit masks.

use std::fmt;
use std::ops::{BitAnd, BitAndAssign, BitOr, BitOrAssign, Not, Sub};

use crate::rootsys::RootId;

#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootSet(pub u128);

impl RootSet {
    pub const EMPTY: RootSet = RootSet(0);

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 128 {
            RootSet(u128::MAX)
        } else {
            RootSet((1u128 << n) - 1)
        }
    }

    pub fn singleton(id: RootId) -> Self {
        RootSet(1u128 << id)
    }

    pub fn contains(self, id: RootId) -> bool {
        self.0 >> id & 1 == 1
    }

    pub fn insert(&mut self, id: RootId) {
        self.0 |= 1u128 << id;
    }

    pub fn remove(&mut self, id: RootId) {
        self.0 &= !(1u128 << id);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: RootSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn first(self) -> Option<RootId> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }
}

pub struct Iter(u128);

impl Iterator for Iter {
    type Item = RootId;

    fn next(&mut self) -> Option<RootId> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

impl FromIterator<RootId> for RootSet {
    fn from_iter<T: IntoIterator<Item = RootId>>(iter: T) -> Self {
        let mut s = RootSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl BitOr for RootSet {
    type Output = RootSet;
    fn bitor(self, rhs: RootSet) -> RootSet {
        RootSet(self.0 | rhs.0)
    }
}

impl BitOrAssign for RootSet {
    fn bitor_assign(&mut self, rhs: RootSet) {
        self.0 |= rhs.0;
    }
}

impl BitAnd for RootSet {
    type Output = RootSet;
    fn bitand(self, rhs: RootSet) -> RootSet {
        RootSet(self.0 & rhs.0)
    }
}

impl BitAndAssign for RootSet {
    fn bitand_assign(&mut self, rhs: RootSet) {
        self.0 &= rhs.0;
    }
}

impl Sub for RootSet {
    type Output = RootSet;
    fn sub(self, rhs: RootSet) -> RootSet {
        RootSet(self.0 & !rhs.0)
    }
}

impl Not for RootSet {
    type Output = RootSet;
    fn not(self) -> RootSet {
        RootSet(!self.0)
    }
}

impl fmt::Debug for RootSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let a: RootSet = [1, 5, 127].into_iter().collect();
        assert_eq!(a.len(), 3);
        assert!(a.contains(127) && !a.contains(0));
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![1, 5, 127]);
        assert_eq!((a - RootSet::singleton(5)).len(), 2);
        assert!(RootSet::singleton(1).is_subset(a));
        assert_eq!(RootSet::full(128).len(), 128);
        assert_eq!(RootSet::full(3).0, 7);
        assert_eq!(a.first(), Some(1));
    }
}
