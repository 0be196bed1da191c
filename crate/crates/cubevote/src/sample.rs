//! Seeded random distribution generators for property testing and sweeps.
//!
//! Everything here is exact: lattice points of the probability simplex with
//! a fixed denominator, mixed with point masses or symmetrized to force the
//! marginal structure a test needs. Rejection sampling near the thresholds
//! essentially never succeeds, so the generators construct satisfying
//! instances directly.

use num_bigint::BigInt;
use rand::Rng;

use crate::cube::{CoordSet, Vertex};
use crate::measure::{Direction, Distribution};
use crate::scalar::frac;
use crate::Rational;

/// A uniformly random lattice point of the simplex: `2^d` nonnegative
/// weights with common denominator `denom` summing to exactly 1.
pub fn simplex<R: Rng>(rng: &mut R, d: usize, denom: u64) -> Distribution<Rational> {
    assert!(denom >= 1);
    let parts = 1usize << d;
    // Stars and bars: a sorted choice of parts-1 bar positions among
    // denom + parts - 1 slots determines the composition.
    let slots = denom as usize + parts - 1;
    let mut bars = rand::seq::index::sample(rng, slots, parts - 1).into_vec();
    bars.sort_unstable();
    let mut weights = Vec::with_capacity(parts);
    let mut prev_bar: i64 = -1;
    for &bar in &bars {
        weights.push(make_weight((bar as i64 - prev_bar - 1) as usize, denom));
        prev_bar = bar as i64;
    }
    weights.push(make_weight((slots as i64 - 1 - prev_bar) as usize, denom));
    Distribution::from_weights(d, weights).expect("composition sums to 1")
}

fn make_weight(count: usize, denom: u64) -> Rational {
    Rational::new(BigInt::from(count), BigInt::from(denom))
}

/// `beta * point_mass(at) + (1 - beta) * base`, exactly.
pub fn mix_with_point_mass(
    base: &Distribution<Rational>,
    at: Vertex,
    beta: &Rational,
) -> Distribution<Rational> {
    let one_minus = Rational::from_integer(1.into()) - beta.clone();
    let weights = base
        .vertices()
        .map(|v| {
            let mut w = one_minus.clone() * base.weight(v).clone();
            if v == at {
                w += beta.clone();
            }
            w
        })
        .collect();
    Distribution::from_weights(base.dim(), weights).expect("convex combination")
}

/// A random distribution whose zero-marginals all reach at least `beta`:
/// a random simplex point mixed with mass `beta` at the origin.
pub fn zero_majority_mixture<R: Rng>(
    rng: &mut R,
    d: usize,
    beta: &Rational,
    denom: u64,
) -> Distribution<Rational> {
    let base = simplex(rng, d, denom);
    mix_with_point_mass(&base, Vertex::ZERO, beta)
}

/// A random monotone distribution: a mixture of two product measures whose
/// per-issue probabilities all sit strictly on the same side of 1/2.
pub fn monotone<R: Rng>(rng: &mut R, d: usize, direction: Direction) -> Distribution<Rational> {
    let denom = 64i64;
    let mut draw = |_: usize| {
        let k = rng.random_range(1..denom / 2);
        match direction {
            Direction::Decreasing => frac::<Rational>(k, denom as u64),
            Direction::Increasing => frac::<Rational>(denom - k, denom as u64),
        }
    };
    let p1: Vec<Rational> = (0..d).map(&mut draw).collect();
    let p2: Vec<Rational> = (0..d).map(&mut draw).collect();
    let lambda = frac::<Rational>(rng.random_range(1..16), 16);
    let a = Distribution::product(&p1).expect("probabilities in range");
    let b = Distribution::product(&p2).expect("probabilities in range");
    let weights = a
        .vertices()
        .map(|v| {
            lambda.clone() * a.weight(v).clone()
                + (Rational::from_integer(1.into()) - lambda.clone()) * b.weight(v).clone()
        })
        .collect();
    Distribution::from_weights(d, weights).expect("convex combination")
}

/// A random distribution with the given coordinates exactly balanced,
/// obtained by averaging a randomly tilted base over the chosen reflections.
pub fn with_balanced_coords<R: Rng>(
    rng: &mut R,
    d: usize,
    balanced: CoordSet,
    denom: u64,
) -> Distribution<Rational> {
    let base = zero_majority_mixture(rng, d, &frac(1, 8), denom);
    let mut weights: Vec<Rational> = base.weights().to_vec();
    let h = frac::<Rational>(1, 2);
    for i in balanced.iter().filter(|&i| i <= d) {
        let flipped: Vec<Rational> = (0..weights.len())
            .map(|v| weights[v ^ (1 << (i - 1))].clone())
            .collect();
        for (w, f) in weights.iter_mut().zip(flipped) {
            *w = h.clone() * (w.clone() + f);
        }
    }
    Distribution::from_weights(d, weights).expect("averaging preserves the simplex")
}

/// A uniformly random vertex of `Q_d`.
pub fn vertex<R: Rng>(rng: &mut R, d: usize) -> Vertex {
    Vertex(rng.random_range(0..(1u32 << d)))
}
