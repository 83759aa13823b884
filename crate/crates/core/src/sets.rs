//! Small subsets of an indexed universe, packed into a `u64`.
//!
//! Worlds, algebra atoms, and valuation colors are all indices below 64, so one
//! machine word covers every set this crate manipulates. Operations that depend
//! on the universe size (complement, full set) take it as an argument; a
//! `Subset` by itself is just a bag of bits.

use core::fmt;

/// Largest universe a `Subset` can index.
pub const MAX_UNIVERSE: usize = 64;

/// How many atoms a carrier may have before exhaustive subset sweeps are refused.
pub const ENUM_LIMIT: usize = 16;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_bits(bits: u64) -> Subset {
        Subset(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(i: usize) -> Subset {
        debug_assert!(i < MAX_UNIVERSE);
        Subset(1 << i)
    }

    pub fn from_indices(indices: &[usize]) -> Subset {
        let mut s = Subset::EMPTY;
        for &i in indices {
            s = s.with(i);
        }
        s
    }

    /// The full set `{0, ..., n-1}`.
    pub fn full(n: usize) -> Subset {
        debug_assert!(n <= MAX_UNIVERSE);
        if n == MAX_UNIVERSE {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_UNIVERSE && self.0 & (1 << i) != 0
    }

    pub fn with(self, i: usize) -> Subset {
        debug_assert!(i < MAX_UNIVERSE);
        Subset(self.0 | (1 << i))
    }

    pub fn without(self, i: usize) -> Subset {
        Subset(self.0 & !(1 << i))
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn inter(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn diff(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn complement_in(self, n: usize) -> Subset {
        Subset::full(n).diff(self)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: Subset) -> bool {
        self.0 & other.0 != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Indices of the members, ascending.
    pub fn iter(self) -> SubsetIter {
        SubsetIter(self.0)
    }

    /// Smallest member, if any.
    pub fn least(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }
}

pub struct SubsetIter(u64);

impl Iterator for SubsetIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let i = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(i)
        }
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// All subsets of `{0, ..., n-1}` in ascending bit order. Caller is responsible
/// for keeping `n` within [`ENUM_LIMIT`]; this iterator itself only needs n < 64.
pub fn all_subsets(n: usize) -> impl Iterator<Item = Subset> {
    debug_assert!(n < MAX_UNIVERSE);
    (0..(1u64 << n)).map(Subset)
}
