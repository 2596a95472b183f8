//! Fixed-width bit sets over at most 64 indices.
//!
//! Presentations are capped at 64 objects, and since every thick submodule of
//! a finite presentation is principal the submodule lattice never has more
//! points than there are objects. Both object sets and point sets therefore
//! fit in a single `u64`.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Largest index count a bit set can hold.
pub const CAPACITY: usize = 64;

/// Index of an isomorphism class of objects in a presentation.
#[derive(
    Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct ObjectId(pub usize);

impl ObjectId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for ObjectId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Index of a point in an enumerated space.
#[derive(
    Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct PointId(pub usize);

impl PointId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for PointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p{}", self.0)
    }
}

macro_rules! bitset {
    ($(#[$meta:meta])* $name:ident, $item:ident) => {
        $(#[$meta])*
        #[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
        pub struct $name(u64);

        impl $name {
            pub const EMPTY: Self = Self(0);

            #[inline]
            pub const fn from_bits(bits: u64) -> Self {
                Self(bits)
            }

            #[inline]
            pub const fn bits(self) -> u64 {
                self.0
            }

            /// The set `{0, 1, ..., n - 1}`.
            #[inline]
            pub fn full(n: usize) -> Self {
                debug_assert!(n <= CAPACITY);
                if n == CAPACITY {
                    Self(u64::MAX)
                } else {
                    Self((1u64 << n) - 1)
                }
            }

            #[inline]
            pub fn singleton(x: $item) -> Self {
                debug_assert!(x.0 < CAPACITY);
                Self(1u64 << x.0)
            }

            #[inline]
            pub fn contains(self, x: $item) -> bool {
                x.0 < CAPACITY && self.0 & (1u64 << x.0) != 0
            }

            #[inline]
            pub fn insert(&mut self, x: $item) -> bool {
                let fresh = !self.contains(x);
                self.0 |= 1u64 << x.0;
                fresh
            }

            #[inline]
            pub fn remove(&mut self, x: $item) -> bool {
                let present = self.contains(x);
                self.0 &= !(1u64 << x.0);
                present
            }

            #[inline]
            pub fn with(mut self, x: $item) -> Self {
                self.insert(x);
                self
            }

            #[inline]
            pub fn union(self, other: Self) -> Self {
                Self(self.0 | other.0)
            }

            #[inline]
            pub fn intersection(self, other: Self) -> Self {
                Self(self.0 & other.0)
            }

            #[inline]
            pub fn difference(self, other: Self) -> Self {
                Self(self.0 & !other.0)
            }

            #[inline]
            pub fn is_subset(self, other: Self) -> bool {
                self.0 & !other.0 == 0
            }

            #[inline]
            pub fn is_disjoint(self, other: Self) -> bool {
                self.0 & other.0 == 0
            }

            #[inline]
            pub fn is_empty(self) -> bool {
                self.0 == 0
            }

            #[inline]
            pub fn len(self) -> usize {
                self.0.count_ones() as usize
            }

            /// Smallest element, if any.
            #[inline]
            pub fn first(self) -> Option<$item> {
                (self.0 != 0).then(|| $item(self.0.trailing_zeros() as usize))
            }

            pub fn iter(self) -> impl Iterator<Item = $item> {
                let mut rest = self.0;
                std::iter::from_fn(move || {
                    if rest == 0 {
                        return None;
                    }
                    let i = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some($item(i))
                })
            }

            /// All subsets of `self`, starting with the empty set.
            pub fn subsets(self) -> impl Iterator<Item = Self> {
                let set = self.0;
                let mut next = Some(0u64);
                std::iter::from_fn(move || {
                    let cur = next?;
                    let succ = cur.wrapping_sub(set) & set;
                    next = (succ != 0).then_some(succ);
                    Some(Self(cur))
                })
            }
        }

        impl FromIterator<$item> for $name {
            fn from_iter<I: IntoIterator<Item = $item>>(iter: I) -> Self {
                let mut s = Self::EMPTY;
                for x in iter {
                    s.insert(x);
                }
                s
            }
        }

        impl Serialize for $name {
            fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                s.collect_seq(self.iter().map(|x| x.0))
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.debug_set().entries(self.iter().map(|x| x.0)).finish()
            }
        }
    };
}

bitset!(
    /// A set of objects of one side (K or M) of a presentation.
    ObjSet,
    ObjectId
);

bitset!(
    /// A set of points of an enumerated space.
    PointSet,
    PointId
);
