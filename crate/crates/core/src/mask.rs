//! Vertex subsets packed into a single machine word.
//!
//! Vertices are labelled `1..=64`; vertex `v` lives at bit `v - 1`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

use serde::{Deserialize, Serialize};

pub const MAX_VERTEX: u8 = 64;

/// A subset of `{1, .., 64}`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexMask(u64);

impl VertexMask {
    pub const EMPTY: VertexMask = VertexMask(0);

    pub const fn from_bits(bits: u64) -> Self {
        VertexMask(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `{1, .., m}`.
    pub fn range(m: u8) -> Self {
        assert!(m <= MAX_VERTEX, "vertex count {m} exceeds {MAX_VERTEX}");
        if m == 64 {
            VertexMask(u64::MAX)
        } else {
            VertexMask((1u64 << m) - 1)
        }
    }

    pub fn singleton(v: u8) -> Self {
        assert!((1..=MAX_VERTEX).contains(&v), "vertex {v} out of range");
        VertexMask(1u64 << (v - 1))
    }

    /// Builds a mask from vertex labels, rejecting labels outside `1..=64`.
    pub fn try_from_vertices<I: IntoIterator<Item = u32>>(vertices: I) -> Option<Self> {
        let mut bits = 0u64;
        for v in vertices {
            if v == 0 || v > MAX_VERTEX as u32 {
                return None;
            }
            bits |= 1u64 << (v - 1);
        }
        Some(VertexMask(bits))
    }

    pub fn from_vertices<I: IntoIterator<Item = u8>>(vertices: I) -> Self {
        vertices
            .into_iter()
            .fold(VertexMask::EMPTY, |acc, v| acc | VertexMask::singleton(v))
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, v: u8) -> bool {
        (1..=MAX_VERTEX).contains(&v) && self.0 & (1u64 << (v - 1)) != 0
    }

    pub const fn is_subset(self, other: VertexMask) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn is_disjoint(self, other: VertexMask) -> bool {
        self.0 & other.0 == 0
    }

    pub fn insert(self, v: u8) -> Self {
        self | VertexMask::singleton(v)
    }

    pub fn remove(self, v: u8) -> Self {
        self - VertexMask::singleton(v)
    }

    /// Smallest vertex, if any.
    pub fn min_vertex(self) -> Option<u8> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as u8 + 1)
    }

    pub fn max_vertex(self) -> Option<u8> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros() as u8)
    }

    /// Vertices in increasing order.
    pub fn iter(self) -> Vertices {
        Vertices(self.0)
    }

    pub fn to_vec(self) -> Vec<u8> {
        self.iter().collect()
    }

    /// Number of elements of `self` strictly smaller than `v`.
    pub fn count_below(self, v: u8) -> usize {
        let below = if v <= 1 { 0 } else { (1u64 << (v - 1)) - 1 };
        (self.0 & below).count_ones() as usize
    }

    /// All subsets of `self`, in increasing numeric order of their bits.
    pub fn subsets(self) -> Subsets {
        Subsets {
            full: self.0,
            next: Some(0),
        }
    }

    /// Lexicographic comparison of the sorted vertex lists.
    pub fn lex_cmp(self, other: VertexMask) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl BitOr for VertexMask {
    type Output = VertexMask;
    fn bitor(self, rhs: VertexMask) -> VertexMask {
        VertexMask(self.0 | rhs.0)
    }
}

impl BitAnd for VertexMask {
    type Output = VertexMask;
    fn bitand(self, rhs: VertexMask) -> VertexMask {
        VertexMask(self.0 & rhs.0)
    }
}

impl Sub for VertexMask {
    type Output = VertexMask;
    fn sub(self, rhs: VertexMask) -> VertexMask {
        VertexMask(self.0 & !rhs.0)
    }
}

impl Not for VertexMask {
    type Output = VertexMask;
    fn not(self) -> VertexMask {
        VertexMask(!self.0)
    }
}

impl FromIterator<u8> for VertexMask {
    fn from_iter<T: IntoIterator<Item = u8>>(iter: T) -> Self {
        VertexMask::from_vertices(iter)
    }
}

impl fmt::Debug for VertexMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for VertexMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for VertexMask {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_vec().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for VertexMask {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = Vec::<u32>::deserialize(deserializer)?;
        VertexMask::try_from_vertices(raw)
            .ok_or_else(|| serde::de::Error::custom("vertex label outside 1..=64"))
    }
}

pub struct Vertices(u64);

impl Iterator for Vertices {
    type Item = u8;

    fn next(&mut self) -> Option<u8> {
        if self.0 == 0 {
            return None;
        }
        let tz = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(tz as u8 + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Vertices {}

pub struct Subsets {
    full: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = VertexMask;

    fn next(&mut self) -> Option<VertexMask> {
        let cur = self.next?;
        self.next = if cur == self.full {
            None
        } else {
            Some((cur.wrapping_sub(self.full)) & self.full)
        };
        Some(VertexMask(cur))
    }
}

/// Sorts masks lexicographically by their vertex lists.
pub fn sort_lex(masks: &mut [VertexMask]) {
    masks.sort_by(|a, b| a.lex_cmp(*b));
}
