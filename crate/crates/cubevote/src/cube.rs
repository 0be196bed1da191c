//! Vertices and coordinate sets of the discrete hypercube `{0,1}^d`.
//!
//! A vertex is stored as a bitmask: coordinate `i` (1-based) is bit `i - 1`
//! of the index. Bitstrings render coordinate 1 leftmost, so `"110"` is the
//! vertex with coordinates 1 and 2 set, i.e. index `0b011 = 3`.

use crate::error::Error;

/// A point of the hypercube, identified by its bitmask index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex(pub u32);

impl Vertex {
    pub const ZERO: Vertex = Vertex(0);

    /// The all-ones vertex of dimension `d`.
    pub fn all_ones(d: usize) -> Vertex {
        Vertex(mask(d))
    }

    /// The vertex with coordinates `1..=k` set and the rest zero.
    pub fn prefix_ones(k: usize) -> Vertex {
        Vertex(mask(k))
    }

    pub fn index(self) -> u32 {
        self.0
    }

    /// Value of coordinate `i` (1-based).
    pub fn bit(self, coord: usize) -> bool {
        (self.0 >> (coord - 1)) & 1 == 1
    }

    pub fn with_bit(self, coord: usize, value: bool) -> Vertex {
        let m = 1u32 << (coord - 1);
        if value {
            Vertex(self.0 | m)
        } else {
            Vertex(self.0 & !m)
        }
    }

    /// Number of coordinates set to 1 (the layer of the vertex).
    pub fn ones(self) -> u32 {
        self.0.count_ones()
    }

    /// The antipode within dimension `d`: every coordinate flipped.
    pub fn complement(self, d: usize) -> Vertex {
        Vertex(self.0 ^ mask(d))
    }

    /// XOR with a flip mask (relabels 0 and 1 on the masked coordinates).
    pub fn flip(self, flips: Vertex) -> Vertex {
        Vertex(self.0 ^ flips.0)
    }

    pub fn in_range(self, d: usize) -> bool {
        d < 32 && self.0 < (1u32 << d) || d >= 32
    }

    /// Parse a bitstring like `"011"`; leftmost character is coordinate 1.
    pub fn from_bitstring(s: &str, d: usize) -> Result<Vertex, Error> {
        if s.len() != d {
            return Err(Error::parse(format!(
                "bitstring \"{s}\" has length {}, expected {d}",
                s.len()
            )));
        }
        let mut v = 0u32;
        for (j, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => v |= 1 << j,
                _ => {
                    return Err(Error::parse(format!(
                        "bitstring \"{s}\" contains invalid character '{ch}'"
                    )))
                }
            }
        }
        Ok(Vertex(v))
    }

    /// Render as a bitstring of length `d`, coordinate 1 leftmost.
    pub fn bitstring(self, d: usize) -> String {
        (1..=d).map(|i| if self.bit(i) { '1' } else { '0' }).collect()
    }
}

/// Hamming distance: the number of coordinates on which the vertices differ.
pub fn hamming(a: Vertex, b: Vertex) -> u32 {
    (a.0 ^ b.0).count_ones()
}

/// All `2^d` vertices in index order.
pub fn vertices(d: usize) -> impl Iterator<Item = Vertex> {
    (0..(1u32 << d)).map(Vertex)
}

fn mask(d: usize) -> u32 {
    if d >= 32 {
        u32::MAX
    } else {
        (1u32 << d) - 1
    }
}

/// A subset of the coordinate axes `{1, ..., d}`, stored as a bitmask
/// (coordinate `i` is bit `i - 1`, matching [`Vertex`]).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct CoordSet(pub u32);

impl CoordSet {
    pub const EMPTY: CoordSet = CoordSet(0);

    pub fn full(d: usize) -> CoordSet {
        CoordSet(mask(d))
    }

    pub fn from_coords(coords: &[usize]) -> CoordSet {
        let mut m = 0u32;
        for &c in coords {
            assert!(c >= 1, "coordinates are 1-based");
            m |= 1 << (c - 1);
        }
        CoordSet(m)
    }

    pub fn contains(self, coord: usize) -> bool {
        (self.0 >> (coord - 1)) & 1 == 1
    }

    pub fn insert(self, coord: usize) -> CoordSet {
        CoordSet(self.0 | 1 << (coord - 1))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Member coordinates in ascending order (1-based).
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (1..=32usize).filter(move |&i| self.contains(i))
    }

    /// All size-`t` subsets of `{1, ..., d}`.
    pub fn subsets_of_size(d: usize, t: usize) -> Vec<CoordSet> {
        (0..(1u32 << d))
            .filter(|m| m.count_ones() as usize == t)
            .map(CoordSet)
            .collect()
    }
}
