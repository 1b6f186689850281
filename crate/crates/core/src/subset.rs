//! Subsets of the simple roots, stored as bitmasks over their indices.

use std::fmt;

/// A subset `P` of `F_0`; bit `i` stands for the `i`-th simple root.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Subset(u32);

impl Subset {
    pub const MAX_RANK: usize = 32;

    pub fn empty() -> Self {
        Subset(0)
    }

    pub fn full(n: usize) -> Self {
        assert!(n <= Self::MAX_RANK);
        if n == 32 {
            Subset(u32::MAX)
        } else {
            Subset((1u32 << n) - 1)
        }
    }

    pub fn from_bits(bits: u32) -> Self {
        Subset(bits)
    }

    pub fn from_indices(indices: &[usize]) -> Self {
        Subset(indices.iter().fold(0, |acc, &i| acc | (1 << i)))
    }

    pub fn bits(&self) -> u32 {
        self.0
    }

    pub fn contains(&self, i: usize) -> bool {
        i < 32 && self.0 & (1 << i) != 0
    }

    pub fn with(&self, i: usize) -> Self {
        Subset(self.0 | (1 << i))
    }

    pub fn without(&self, i: usize) -> Self {
        Subset(self.0 & !(1 << i))
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(&self, other: &Subset) -> Self {
        Subset(self.0 | other.0)
    }

    pub fn difference(&self, other: &Subset) -> Self {
        Subset(self.0 & !other.0)
    }

    /// Indices in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..32).filter(move |&i| self.contains(i))
    }

    pub fn indices(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Every subset of an `n`-element set, ordered by bitmask.
    pub fn all(n: usize) -> impl Iterator<Item = Subset> {
        assert!(n < 32);
        (0u32..(1 << n)).map(Subset)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
