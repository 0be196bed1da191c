//! The two-player Voronoi game: payoffs, best responses, equilibria,
//! local equilibria, and subcube restriction.
//!
//! Each player picks a vertex; a voter at `V` goes to the strictly closer
//! player in Hamming distance and splits evenly on ties. All comparisons are
//! exact in the scalar type, so strict inequalities and tie boundaries are
//! decided precisely.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::cube::{hamming, Vertex};
use crate::error::Error;
use crate::measure::Distribution;
use crate::scalar::{half, Scalar};

/// Exact weights of the three-way partition induced by a position pair:
/// the cell of `A`, the equidistant set, and the cell of `B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PayoffBreakdown<S> {
    pub v_ab: S,
    pub tie: S,
    pub v_ba: S,
}

impl<S: Scalar> PayoffBreakdown<S> {
    /// Payoff to the player at `A`: their cell plus half the ties.
    pub fn p1(&self) -> S {
        self.v_ab.clone() + half::<S>() * self.tie.clone()
    }

    /// Payoff to the player at `B`.
    pub fn p2(&self) -> S {
        self.v_ba.clone() + half::<S>() * self.tie.clone()
    }
}

/// The exact maximum payoff achievable against a fixed opponent, together
/// with every vertex attaining it. No tie-breaking is applied here; callers
/// choose their own policy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BestResponseResult<S> {
    pub value: S,
    pub argmax: Vec<Vertex>,
}

/// The set of ordered position pairs where each point is a best response to
/// the other.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EquilibriumSet {
    pub pairs: BTreeSet<(Vertex, Vertex)>,
}

impl EquilibriumSet {
    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn contains(&self, a: Vertex, b: Vertex) -> bool {
        self.pairs.contains(&(a, b))
    }

    pub fn iter(&self) -> impl Iterator<Item = &(Vertex, Vertex)> {
        self.pairs.iter()
    }
}

/// Measure of the cell of `A`, the tie set, and the cell of `B` in one pass.
/// The components always sum to exactly 1; when `A = B` everything ties.
pub fn voronoi_measures<S: Scalar>(
    dist: &Distribution<S>,
    a: Vertex,
    b: Vertex,
) -> PayoffBreakdown<S> {
    let mut v_ab = S::zero();
    let mut tie = S::zero();
    let mut v_ba = S::zero();
    for v in dist.vertices() {
        let w = dist.weight(v);
        if w.is_zero() {
            continue;
        }
        match hamming(v, a).cmp(&hamming(v, b)) {
            Ordering::Less => v_ab = v_ab + w.clone(),
            Ordering::Equal => tie = tie + w.clone(),
            Ordering::Greater => v_ba = v_ba + w.clone(),
        }
    }
    PayoffBreakdown { v_ab, tie, v_ba }
}

/// Payoff to the player at `A` against an opponent at `B`: the weight of the
/// vertices strictly closer to `A` plus half the weight of the equidistant
/// set. Satisfies `payoff(A, B) + payoff(B, A) = 1` exactly.
pub fn payoff<S: Scalar>(dist: &Distribution<S>, a: Vertex, b: Vertex) -> S {
    let mut own = S::zero();
    let mut tie = S::zero();
    for v in dist.vertices() {
        let w = dist.weight(v);
        if w.is_zero() {
            continue;
        }
        match hamming(v, a).cmp(&hamming(v, b)) {
            Ordering::Less => own = own + w.clone(),
            Ordering::Equal => tie = tie + w.clone(),
            Ordering::Greater => {}
        }
    }
    own + half::<S>() * tie
}

/// Scan all `2^d` candidate responses to `B` and return the exact maximum
/// payoff with the full set of maximizers.
pub fn best_responses<S: Scalar>(dist: &Distribution<S>, b: Vertex) -> BestResponseResult<S> {
    let mut value: Option<S> = None;
    let mut argmax = Vec::new();
    for a in dist.vertices() {
        let p = payoff(dist, a, b);
        match &value {
            Some(best) if p < *best => {}
            Some(best) if p == *best => argmax.push(a),
            _ => {
                value = Some(p);
                argmax = vec![a];
            }
        }
    }
    BestResponseResult {
        value: value.expect("at least one vertex"),
        argmax,
    }
}

/// True when `A` is a best response to `B` and `B` is a best response to `A`.
pub fn is_equilibrium<S: Scalar>(dist: &Distribution<S>, a: Vertex, b: Vertex) -> bool {
    let pa = payoff(dist, a, b);
    for x in dist.vertices() {
        if payoff(dist, x, b) > pa {
            return false;
        }
    }
    if a == b {
        // Both players face the identical deviation problem.
        return true;
    }
    let pb = payoff(dist, b, a);
    for x in dist.vertices() {
        if payoff(dist, x, a) > pb {
            return false;
        }
    }
    true
}

/// True when neither player can strictly improve by moving to a vertex
/// within Hamming distance `k` of their current position.
pub fn is_k_local_equilibrium<S: Scalar>(
    dist: &Distribution<S>,
    a: Vertex,
    b: Vertex,
    k: usize,
) -> Result<bool, Error> {
    if k > dist.dim() {
        return Err(Error::BadRadius { k, d: dist.dim() });
    }
    let pa = payoff(dist, a, b);
    for x in dist.vertices() {
        if hamming(x, a) as usize <= k && payoff(dist, x, b) > pa {
            return Ok(false);
        }
    }
    if a == b {
        return Ok(true);
    }
    let pb = payoff(dist, b, a);
    for x in dist.vertices() {
        if hamming(x, b) as usize <= k && payoff(dist, x, a) > pb {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exact set of equilibrium pairs.
///
/// When every coordinate has a strict majority, any equilibrium must be the
/// two players co-located at the majority point, so only that single pair is
/// tested. With balanced coordinates the candidates are restricted to the
/// majority subcube, and each candidate pair is still verified against all
/// `2^d` deviations.
pub fn find_equilibria<S: Scalar>(dist: &Distribution<S>) -> EquilibriumSet {
    let report = dist.majority_report();
    let mut pairs = BTreeSet::new();
    if let Some(m) = report.majority_point {
        if is_equilibrium(dist, m, m) {
            pairs.insert((m, m));
        }
        return EquilibriumSet { pairs };
    }

    // Majority subcube: majority value on decided coordinates, both values on
    // the balanced ones.
    let free = report.free_coords;
    let mut fixed_bits = Vertex::ZERO;
    for i in 1..=dist.dim() {
        if !free.contains(i) && report.marginals[i - 1] < half::<S>() {
            fixed_bits = fixed_bits.with_bit(i, true);
        }
    }
    let candidates: Vec<Vertex> = dist
        .vertices()
        .filter(|v| v.0 & !free.0 == fixed_bits.0)
        .collect();
    let br_values: Vec<S> = candidates
        .iter()
        .map(|&b| best_responses(dist, b).value)
        .collect();
    for (ai, &a) in candidates.iter().enumerate() {
        for (bi, &b) in candidates.iter().enumerate() {
            if payoff(dist, a, b) == br_values[bi] && payoff(dist, b, a) == br_values[ai] {
                pairs.insert((a, b));
            }
        }
    }
    EquilibriumSet { pairs }
}

/// Project the measure onto the coordinates where `A` and `B` differ.
///
/// The result lives on a cube of dimension `|A xor B|`, re-indexed by
/// ascending original coordinate. Bit value 1 in the restricted cube means
/// "agrees with `B`", so `A` maps to all-zeros and `B` to all-ones.
pub fn restrict<S: Scalar>(
    dist: &Distribution<S>,
    a: Vertex,
    b: Vertex,
) -> Result<Distribution<S>, Error> {
    if a == b {
        return Err(Error::EqualPoints);
    }
    let diff = a.0 ^ b.0;
    let positions: Vec<u32> = (0..32).filter(|j| (diff >> j) & 1 == 1).collect();
    let t = positions.len();
    let mut weights = vec![S::zero(); 1 << t];
    for v in dist.vertices() {
        let w = dist.weight(v);
        if w.is_zero() {
            continue;
        }
        let mut u = 0usize;
        for (j, &pos) in positions.iter().enumerate() {
            if ((v.0 ^ a.0) >> pos) & 1 == 1 {
                u |= 1 << j;
            }
        }
        weights[u] = weights[u].clone() + w.clone();
    }
    Distribution::from_weights_with_cap(t, weights, t)
}

/// Payoff computed through the restriction: the opponent at `B` collects the
/// top half of the layers of the restricted cube (plus half the middle layer
/// when the difference is even), and the player at `A` gets the complement.
/// Agrees exactly with [`payoff`].
pub fn payoff_via_restriction<S: Scalar>(
    dist: &Distribution<S>,
    a: Vertex,
    b: Vertex,
) -> Result<S, Error> {
    let restricted = restrict(dist, a, b)?;
    let t = restricted.dim();
    let mut upper = S::zero();
    let mut middle = S::zero();
    for u in restricted.vertices() {
        let ones = 2 * u.ones() as usize;
        if ones > t {
            upper = upper + restricted.weight(u).clone();
        } else if ones == t {
            middle = middle + restricted.weight(u).clone();
        }
    }
    let opponent = upper + half::<S>() * middle;
    Ok(S::one() - opponent)
}
