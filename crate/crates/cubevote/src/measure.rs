//! Voter distributions on the hypercube: exact weights, marginals, coalition
//! weights, majority structure, monotonicity, and the standard families
//! (uniform, product, mixed product).
//!
//! A [`Distribution`] is a dense table of `2^d` nonnegative weights summing
//! to exactly 1. Distributions are immutable after construction; every
//! operation is a pure function of its inputs.

use crate::cube::{vertices, CoordSet, Vertex};
use crate::error::Error;
use crate::scalar::{half, int, powi, Scalar};
use crate::DEFAULT_DIM_CAP;

/// A probability measure on the vertices of `{0,1}^d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distribution<S> {
    d: usize,
    weights: Vec<S>,
}

/// Per-coordinate referendum outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoordMajority {
    /// Strictly more than half the weight prefers 0 on this coordinate.
    ZeroMajority,
    /// Strictly more than half the weight prefers 1.
    OneMajority,
    /// Exactly half the weight on each option.
    Balanced,
}

/// Direction for monotonicity checks with respect to the inclusion order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Weight never increases when a coordinate is raised from 0 to 1.
    Decreasing,
    /// Weight never decreases when a coordinate is raised.
    Increasing,
}

/// Issue-by-issue majority structure of a distribution.
///
/// `majority_point` is present exactly when no coordinate is balanced; the
/// balanced coordinates otherwise span the free directions of the majority
/// subcube.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MajorityReport<S> {
    /// `marginals[i - 1]` is the total weight of vertices with coordinate `i` equal to 0.
    pub marginals: Vec<S>,
    pub classification: Vec<CoordMajority>,
    pub majority_point: Option<Vertex>,
    pub free_coords: CoordSet,
}

impl<S: Scalar> Distribution<S> {
    /// Build a distribution from an explicit sparse list of `(vertex, weight)`
    /// entries. Unmentioned vertices get weight 0.
    ///
    /// With `normalize` set, weights are divided by their exact sum (which
    /// must be positive); otherwise the sum must equal 1 exactly.
    pub fn from_entries(
        d: usize,
        entries: impl IntoIterator<Item = (Vertex, S)>,
        normalize: bool,
    ) -> Result<Self, Error> {
        Self::from_entries_with_cap(d, entries, normalize, DEFAULT_DIM_CAP)
    }

    /// Like [`Distribution::from_entries`] with an explicit dimension cap.
    pub fn from_entries_with_cap(
        d: usize,
        entries: impl IntoIterator<Item = (Vertex, S)>,
        normalize: bool,
        cap: usize,
    ) -> Result<Self, Error> {
        check_dim(d, cap)?;
        let mut weights = vec![S::zero(); 1 << d];
        let mut seen = vec![false; 1 << d];
        for (v, w) in entries {
            if !v.in_range(d) {
                return Err(Error::VertexOutOfRange { vertex: v.0, d });
            }
            if w < S::zero() {
                return Err(Error::NegativeWeight { vertex: v.0 });
            }
            if seen[v.0 as usize] {
                return Err(Error::DuplicateVertex { vertex: v.0 });
            }
            seen[v.0 as usize] = true;
            weights[v.0 as usize] = w;
        }
        Self::finish(d, weights, normalize)
    }

    /// Build a distribution from a dense weight table of length `2^d`.
    pub fn from_weights(d: usize, weights: Vec<S>) -> Result<Self, Error> {
        Self::from_weights_with_cap(d, weights, DEFAULT_DIM_CAP)
    }

    pub fn from_weights_with_cap(d: usize, weights: Vec<S>, cap: usize) -> Result<Self, Error> {
        check_dim(d, cap)?;
        assert_eq!(weights.len(), 1 << d, "weight table has wrong length");
        for (v, w) in weights.iter().enumerate() {
            if *w < S::zero() {
                return Err(Error::NegativeWeight { vertex: v as u32 });
            }
        }
        Self::finish(d, weights, false)
    }

    fn finish(d: usize, mut weights: Vec<S>, normalize: bool) -> Result<Self, Error> {
        let total = weights
            .iter()
            .fold(S::zero(), |acc, w| acc + w.clone());
        if normalize {
            if total.is_zero() {
                return Err(Error::ZeroTotal);
            }
            for w in weights.iter_mut() {
                *w = w.clone() / total.clone();
            }
        } else if total != S::one() {
            return Err(Error::SumNotOne {
                sum: total.to_string(),
            });
        }
        Ok(Distribution { d, weights })
    }

    /// The uniform measure: every vertex gets weight `2^{-d}`.
    pub fn uniform(d: usize) -> Result<Self, Error> {
        check_dim(d, DEFAULT_DIM_CAP)?;
        let w = S::one() / powi(&int(2), d);
        Ok(Distribution {
            d,
            weights: vec![w; 1 << d],
        })
    }

    /// All weight on a single vertex.
    pub fn point_mass(d: usize, v: Vertex) -> Result<Self, Error> {
        check_dim(d, DEFAULT_DIM_CAP)?;
        if !v.in_range(d) {
            return Err(Error::VertexOutOfRange { vertex: v.0, d });
        }
        let mut weights = vec![S::zero(); 1 << d];
        weights[v.0 as usize] = S::one();
        Ok(Distribution { d, weights })
    }

    /// Independent per-coordinate opinions: coordinate `i` is 1 with
    /// probability `p[i - 1]`, so `mu(X) = prod_{x_i=1} p_i * prod_{x_i=0} (1 - p_i)`.
    pub fn product(p: &[S]) -> Result<Self, Error> {
        let d = p.len();
        check_dim(d, DEFAULT_DIM_CAP)?;
        for pi in p {
            if *pi <= S::zero() || *pi >= S::one() {
                return Err(Error::ProbabilityOutOfRange);
            }
        }
        let mut weights = Vec::with_capacity(1 << d);
        for v in vertices(d) {
            let mut w = S::one();
            for i in 1..=d {
                let pi = &p[i - 1];
                w = w * if v.bit(i) {
                    pi.clone()
                } else {
                    S::one() - pi.clone()
                };
            }
            weights.push(w);
        }
        Ok(Distribution { d, weights })
    }

    /// Two-bloc society: proportion `1 - alpha` of voters draw opinions from
    /// `product(p1, ..., p1)` and proportion `alpha` from `product(p2, ..., p2)`,
    /// with `0 < p1 < 1/2 < p2 < 1`. The weight of a vertex depends only on
    /// its layer.
    pub fn mixed_product(d: usize, alpha: &S, p1: &S, p2: &S) -> Result<Self, Error> {
        check_dim(d, DEFAULT_DIM_CAP)?;
        check_mix_params(alpha, p1, p2)?;
        let h = half::<S>();
        debug_assert!(*p1 < h && h < *p2);
        let mut by_layer = Vec::with_capacity(d + 1);
        for k in 0..=d {
            let low = powi(p1, k) * powi(&(S::one() - p1.clone()), d - k);
            let high = powi(p2, k) * powi(&(S::one() - p2.clone()), d - k);
            by_layer.push((S::one() - alpha.clone()) * low + alpha.clone() * high);
        }
        let weights = vertices(d)
            .map(|v| by_layer[v.ones() as usize].clone())
            .collect();
        Ok(Distribution { d, weights })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn weight(&self, v: Vertex) -> &S {
        &self.weights[v.0 as usize]
    }

    pub fn weights(&self) -> &[S] {
        &self.weights
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        vertices(self.d)
    }

    /// Total weight of the half-cube `{X : x_i = 0}`.
    pub fn marginal_zero(&self, coord: usize) -> Result<S, Error> {
        if coord < 1 || coord > self.d {
            return Err(Error::CoordinateOutOfRange {
                coord,
                d: self.d,
            });
        }
        let mut acc = S::zero();
        for v in self.vertices() {
            if !v.bit(coord) {
                acc = acc + self.weights[v.0 as usize].clone();
            }
        }
        Ok(acc)
    }

    /// Weight of the voters preferring 0 on all but at most `m` of the
    /// coordinates in `set`.
    pub fn coalition_weight(&self, set: CoordSet, m: usize) -> Result<S, Error> {
        if set.is_empty() {
            return Err(Error::EmptySet);
        }
        let t = set.len();
        if m > t {
            return Err(Error::BadM { m, size: t });
        }
        let mut acc = S::zero();
        for v in self.vertices() {
            if (v.0 & set.0).count_ones() as usize <= m {
                acc = acc + self.weights[v.0 as usize].clone();
            }
        }
        Ok(acc)
    }

    /// Per-coordinate referendum outcomes, the majority point when every
    /// coordinate has a strict winner, and the free coordinates otherwise.
    ///
    /// A coordinate is balanced only on exact equality with 1/2.
    pub fn majority_report(&self) -> MajorityReport<S> {
        let h = half::<S>();
        let mut marginals = Vec::with_capacity(self.d);
        let mut classification = Vec::with_capacity(self.d);
        let mut point = Vertex::ZERO;
        let mut free = CoordSet::EMPTY;
        for i in 1..=self.d {
            let w0 = self.marginal_zero(i).expect("coord in range");
            let class = if w0 > h {
                CoordMajority::ZeroMajority
            } else if w0 < h {
                point = point.with_bit(i, true);
                CoordMajority::OneMajority
            } else {
                free = free.insert(i);
                CoordMajority::Balanced
            };
            marginals.push(w0);
            classification.push(class);
        }
        MajorityReport {
            marginals,
            classification,
            majority_point: if free.is_empty() { Some(point) } else { None },
            free_coords: free,
        }
    }

    /// Check monotonicity with respect to inclusion by scanning covering
    /// pairs (vertices differing in one raised coordinate), which is
    /// equivalent to the full partial-order condition.
    pub fn is_monotone(&self, direction: Direction) -> bool {
        for v in self.vertices() {
            for i in 1..=self.d {
                if v.bit(i) {
                    continue;
                }
                let lower = &self.weights[v.0 as usize];
                let upper = &self.weights[v.with_bit(i, true).0 as usize];
                let ok = match direction {
                    Direction::Decreasing => lower >= upper,
                    Direction::Increasing => lower <= upper,
                };
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    /// Relabel 0 and 1 on every coordinate whose majority option is 1, so
    /// that every marginal of the result strictly exceeds 1/2. Returns the
    /// relabeled distribution and the flip mask applied; flipping again with
    /// the same mask recovers the original table bit-exactly.
    pub fn canonicalize_zero_majority(&self) -> Result<(Self, Vertex), Error> {
        let h = half::<S>();
        let mut flips = Vertex::ZERO;
        for i in 1..=self.d {
            let w0 = self.marginal_zero(i).expect("coord in range");
            if w0 == h {
                return Err(Error::BalancedCoordinate { coord: i });
            }
            if w0 < h {
                flips = flips.with_bit(i, true);
            }
        }
        Ok((self.flip_coords(flips), flips))
    }

    /// The pushforward under XOR with `flips`: `new(X) = old(X ^ flips)`.
    pub fn flip_coords(&self, flips: Vertex) -> Self {
        let weights = self
            .vertices()
            .map(|v| self.weights[v.flip(flips).0 as usize].clone())
            .collect();
        Distribution { d: self.d, weights }
    }

    /// The pushforward under a coordinate permutation; `perm[i - 1]` is the
    /// image of coordinate `i`.
    pub fn permute_coords(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.d);
        let mut weights = vec![S::zero(); 1 << self.d];
        for v in self.vertices() {
            let mut image = Vertex::ZERO;
            for i in 1..=self.d {
                if v.bit(i) {
                    image = image.with_bit(perm[i - 1], true);
                }
            }
            weights[image.0 as usize] = self.weights[v.0 as usize].clone();
        }
        Distribution { d: self.d, weights }
    }
}

pub(crate) fn check_dim(d: usize, cap: usize) -> Result<(), Error> {
    if d < 1 || d > cap || d >= 31 {
        return Err(Error::DimensionTooLarge {
            d,
            cap: cap.min(30),
        });
    }
    Ok(())
}

pub(crate) fn check_mix_params<S: Scalar>(alpha: &S, p1: &S, p2: &S) -> Result<(), Error> {
    let h = half::<S>();
    if *alpha <= S::zero() || *alpha >= S::one() || *p1 <= S::zero() || *p1 >= h || *p2 <= h || *p2 >= S::one()
    {
        return Err(Error::ParameterOutOfRange);
    }
    Ok(())
}
