//! Fixed-capacity edge subsets.
//!
//! Every subset of the edge ground set (spanning trees, faces, cycles,
//! square-free monomial supports, vertex covers) is an [`EdgeSet`]: one bit
//! per ground-set index in a single `u64`.

use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, Sub};

use serde::{Deserialize, Serialize};

/// Maximum number of edges a ground set may hold.
pub const MAX_EDGES: usize = 64;

/// A subset of the ground set `0..n`, `n <= 64`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeSet(u64);

impl EdgeSet {
    pub const EMPTY: EdgeSet = EdgeSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        EdgeSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The whole ground set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_EDGES, "ground set of {n} edges exceeds capacity");
        if n == MAX_EDGES {
            EdgeSet(u64::MAX)
        } else {
            EdgeSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(index: usize) -> Self {
        assert!(index < MAX_EDGES);
        EdgeSet(1u64 << index)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        indices
            .into_iter()
            .fold(EdgeSet::EMPTY, |acc, i| acc.with(i))
    }

    #[must_use]
    pub fn with(self, index: usize) -> Self {
        self | EdgeSet::singleton(index)
    }

    #[must_use]
    pub fn without(self, index: usize) -> Self {
        self - EdgeSet::singleton(index)
    }

    pub fn insert(&mut self, index: usize) {
        *self = self.with(index);
    }

    pub fn remove(&mut self, index: usize) {
        *self = self.without(index);
    }

    pub fn contains(self, index: usize) -> bool {
        index < MAX_EDGES && self.0 >> index & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: EdgeSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_superset(self, other: EdgeSet) -> bool {
        other.is_subset(self)
    }

    pub fn is_disjoint(self, other: EdgeSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn intersects(self, other: EdgeSet) -> bool {
        !self.is_disjoint(other)
    }

    /// Complement taken inside the ground set `0..n`.
    #[must_use]
    pub fn complement(self, n: usize) -> Self {
        EdgeSet::full(n) - self
    }

    /// Smallest member, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Members in ascending order.
    pub fn iter(self) -> Indices {
        Indices(self.0)
    }

    /// All subsets of `self`, starting from the empty set.
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0,
            next: Some(0),
        }
    }

    /// Compares two sets by their ascending member lists, lexicographically.
    pub fn cmp_lex(self, other: EdgeSet) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

impl BitOr for EdgeSet {
    type Output = EdgeSet;
    fn bitor(self, rhs: EdgeSet) -> EdgeSet {
        EdgeSet(self.0 | rhs.0)
    }
}

impl BitAnd for EdgeSet {
    type Output = EdgeSet;
    fn bitand(self, rhs: EdgeSet) -> EdgeSet {
        EdgeSet(self.0 & rhs.0)
    }
}

impl BitXor for EdgeSet {
    type Output = EdgeSet;
    fn bitxor(self, rhs: EdgeSet) -> EdgeSet {
        EdgeSet(self.0 ^ rhs.0)
    }
}

impl Sub for EdgeSet {
    type Output = EdgeSet;
    fn sub(self, rhs: EdgeSet) -> EdgeSet {
        EdgeSet(self.0 & !rhs.0)
    }
}

impl FromIterator<usize> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        EdgeSet::from_indices(iter)
    }
}

impl IntoIterator for EdgeSet {
    type Item = usize;
    type IntoIter = Indices;
    fn into_iter(self) -> Indices {
        self.iter()
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Ascending iterator over the members of an [`EdgeSet`].
#[derive(Clone, Debug)]
pub struct Indices(u64);

impl Iterator for Indices {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Indices {}

/// Iterator over every subset of a mask (`2^|mask|` items).
#[derive(Clone, Debug)]
pub struct Subsets {
    mask: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = EdgeSet;

    fn next(&mut self) -> Option<EdgeSet> {
        let current = self.next?;
        self.next = if current == self.mask {
            None
        } else {
            // next submask in increasing order
            Some((current.wrapping_sub(self.mask)) & self.mask)
        };
        Some(EdgeSet(current))
    }
}

/// Iterator over all `k`-subsets of `0..n` in ascending bitmask order.
#[derive(Clone, Debug)]
pub struct KSubsets {
    current: Option<u64>,
    limit: u64,
}

impl KSubsets {
    pub fn new(n: usize, k: usize) -> Self {
        assert!(n <= MAX_EDGES);
        let current = if k > n {
            None
        } else if k == 0 {
            Some(0)
        } else {
            Some(EdgeSet::full(k).0)
        };
        KSubsets {
            current,
            limit: EdgeSet::full(n).0,
        }
    }
}

impl Iterator for KSubsets {
    type Item = EdgeSet;

    fn next(&mut self) -> Option<EdgeSet> {
        let x = self.current?;
        self.current = if x == 0 {
            None
        } else {
            // Gosper's hack; stop once the top bit would leave the ground set
            let c = x & x.wrapping_neg();
            let (r, overflow) = x.overflowing_add(c);
            if overflow || r == 0 {
                None
            } else {
                let next = (((r ^ x) >> 2) / c) | r;
                (next & !self.limit == 0).then_some(next)
            }
        };
        Some(EdgeSet(x))
    }
}

/// Drops every set that strictly contains another set of the list, and
/// duplicates. Output is sorted ascending by bitmask.
pub fn minimalize(sets: &mut Vec<EdgeSet>) {
    sets.sort_by_key(|s| (s.len(), s.bits()));
    sets.dedup();
    let mut kept: Vec<EdgeSet> = Vec::with_capacity(sets.len());
    for &s in sets.iter() {
        if !kept.iter().any(|k| k.is_subset(s)) {
            kept.push(s);
        }
    }
    kept.sort();
    *sets = kept;
}

/// True when no member of `sets` is a subset of another member.
pub fn is_antichain(sets: &[EdgeSet]) -> bool {
    sets.iter().enumerate().all(|(i, a)| {
        sets.iter()
            .enumerate()
            .all(|(j, b)| i == j || !a.is_subset(*b))
    })
}
