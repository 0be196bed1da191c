//! Scalar abstraction for weights and payoffs.
//!
//! Everything in the crate is generic over an ordered field. The shipped
//! concrete type is [`crate::Rational`] (arbitrary-precision rationals), which
//! makes every comparison in the game exact; `f64` also satisfies the trait
//! for quick approximate experiments.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_traits::{FromPrimitive, Num, Signed};

use crate::Rational;

/// An ordered field with exact arithmetic over its own representation.
pub trait Scalar: Num + Signed + PartialOrd + FromPrimitive + Clone + Debug + Display {}

impl<T> Scalar for T where T: Num + Signed + PartialOrd + FromPrimitive + Clone + Debug + Display {}

/// Lift a small nonnegative integer into the scalar type.
pub(crate) fn int<S: Scalar>(n: u64) -> S {
    S::from_u64(n).expect("integer not representable in scalar type")
}

/// The fraction `num/den` as a scalar. `den` must be nonzero.
pub(crate) fn frac<S: Scalar>(num: i64, den: u64) -> S {
    S::from_i64(num).expect("numerator not representable") / int(den)
}

pub(crate) fn half<S: Scalar>() -> S {
    frac(1, 2)
}

/// `base^exp` by repeated squaring.
pub(crate) fn powi<S: Scalar>(base: &S, mut exp: usize) -> S {
    let mut acc = S::one();
    let mut sq = base.clone();
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * sq.clone();
        }
        sq = sq.clone() * sq;
        exp >>= 1;
    }
    acc
}

/// Binomial coefficient C(n, k) lifted into the scalar type; 0 when k > n.
///
/// Computed as a product of integer ratios so that arbitrarily large values
/// stay exact in rational scalars (every partial product is itself a
/// binomial coefficient, hence an integer).
pub(crate) fn binomial<S: Scalar>(n: usize, k: usize) -> S {
    if k > n {
        return S::zero();
    }
    let k = k.min(n - k);
    let mut acc = S::one();
    for i in 0..k {
        acc = acc * int::<S>((n - i) as u64) / int::<S>((i + 1) as u64);
    }
    acc
}

/// Exact rational `num/den`. Convenience constructor for tests and examples.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}
