//! Closed-form analysis of mixed product measures.
//!
//! Under a mixture of two product measures the payoff of a vertex against
//! the all-zeros majority point depends only on its layer, so equilibrium
//! questions reduce to a scalar sequence indexed by layer. This module
//! computes that sequence exactly and classifies the best response to the
//! majority point without ever materializing a `2^d` weight table, which
//! keeps it usable far beyond the dense-enumeration cap.

use crate::error::Error;
use crate::measure::{check_mix_params, Distribution};
use crate::scalar::{binomial, half, Scalar};

/// Parameters of a two-bloc mixture: proportion `1 - alpha` of voters lean 0
/// (per-issue probability `p1 < 1/2` of choosing 1) and proportion `alpha`
/// lean 1 (probability `p2 > 1/2`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixParams<S> {
    alpha: S,
    p1: S,
    p2: S,
}

/// Which of the two possible best responses to the majority point prevails.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MixVerdict {
    /// The majority point is a best response to itself, so co-locating
    /// there is an equilibrium.
    EquilibriumAtMajority,
    /// The antipode strictly beats the majority point.
    AntipodalBestResponse,
}

/// Shape of the layer-payoff sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SequenceShape {
    MonotoneDecreasing,
    DecreasingThenIncreasing,
}

/// Exact classification of the best response to the majority point in a
/// given dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixClassification<S> {
    pub verdict: MixVerdict,
    /// Layer attaining the maximum payoff against the majority point;
    /// always 0 or `d`.
    pub argmax_k: usize,
    /// `layer_payoffs[k]` is the payoff of any layer-`k` vertex against the
    /// all-zeros vertex.
    pub layer_payoffs: Vec<S>,
    pub shape: SequenceShape,
    /// Set when the top layer ties the majority point at exactly 1/2; the
    /// verdict is then `EquilibriumAtMajority` because the majority point
    /// still attains the maximum.
    pub tie_at_half: bool,
}

impl<S: Scalar> MixParams<S> {
    pub fn new(alpha: S, p1: S, p2: S) -> Result<Self, Error> {
        check_mix_params(&alpha, &p1, &p2)?;
        Ok(MixParams { alpha, p1, p2 })
    }

    pub fn alpha(&self) -> &S {
        &self.alpha
    }

    pub fn p1(&self) -> &S {
        &self.p1
    }

    pub fn p2(&self) -> &S {
        &self.p2
    }

    /// The common marginal `(1-alpha)(1-p1) + alpha(1-p2)`, computed from
    /// the closed form rather than a weight table.
    pub fn marginal_zero(&self) -> S {
        (S::one() - self.alpha.clone()) * (S::one() - self.p1.clone())
            + self.alpha.clone() * (S::one() - self.p2.clone())
    }

    /// Materialize the distribution on `Q_d`.
    pub fn distribution(&self, d: usize) -> Result<Distribution<S>, Error> {
        Distribution::mixed_product(d, &self.alpha, &self.p1, &self.p2)
    }
}

/// Payoff of the all-ones player against the all-zeros player on `Q_k` under
/// the single product measure with parameter `p`: the upper tail of the
/// binomial distribution, plus half the central term when `k` is even.
pub fn tail_payoff<S: Scalar>(p: &S, k: usize) -> Result<S, Error> {
    if *p <= S::zero() || *p >= S::one() {
        return Err(Error::ProbabilityOutOfRange);
    }
    let q = S::one() - p.clone();
    let mut sum = S::zero();
    if k == 0 {
        return Ok(half());
    }
    // Walk i = k down to ceil((k+1)/2), updating C(k, i) * p^i * q^(k-i)
    // incrementally.
    let mut term = crate::scalar::powi(p, k); // i = k
    let mut i = k;
    let lo = k / 2 + 1;
    loop {
        sum = sum + term.clone();
        if i == lo {
            break;
        }
        // C(k, i-1)/C(k, i) = i/(k-i+1); swap one p for one q.
        term = term * S::from_usize(i).unwrap() * q.clone()
            / (S::from_usize(k - i + 1).unwrap() * p.clone());
        i -= 1;
    }
    if k % 2 == 0 {
        let central = binomial::<S>(k, k / 2)
            * crate::scalar::powi(p, k / 2)
            * crate::scalar::powi(&q, k / 2);
        sum = sum + half::<S>() * central;
    }
    Ok(sum)
}

/// Exact difference `tail_payoff(p, k+1) - tail_payoff(p, k)`: zero for odd
/// `k`, and `C(k, k/2) (pq)^{k/2} (2p - 1) / 2` for even `k`.
pub fn tail_increment<S: Scalar>(p: &S, k: usize) -> Result<S, Error> {
    if *p <= S::zero() || *p >= S::one() {
        return Err(Error::ProbabilityOutOfRange);
    }
    if k % 2 == 1 {
        return Ok(S::zero());
    }
    let q = S::one() - p.clone();
    let pq = p.clone() * q.clone();
    Ok(half::<S>() * binomial::<S>(k, k / 2) * crate::scalar::powi(&pq, k / 2) * (p.clone() - q))
}

/// Payoff of any layer-`k` vertex against the all-zeros vertex under the
/// mixture, in any ambient dimension `d >= k`: the convex combination of the
/// two tail payoffs.
pub fn layer_payoff<S: Scalar>(params: &MixParams<S>, k: usize) -> S {
    let low = tail_payoff(&params.p1, k).expect("validated parameter");
    let high = tail_payoff(&params.p2, k).expect("validated parameter");
    (S::one() - params.alpha.clone()) * low + params.alpha.clone() * high
}

/// Decide whether co-locating at the majority point is an equilibrium on
/// `Q_d`, by exact comparison of the layer-payoff sequence against 1/2.
///
/// Requires the majority point at the all-zeros vertex, i.e.
/// `params.marginal_zero() > 1/2`; otherwise swap the roles of the blocs.
pub fn classify<S: Scalar>(params: &MixParams<S>, d: usize) -> Result<MixClassification<S>, Error> {
    assert!(d >= 1, "dimension must be at least 1");
    if params.marginal_zero() <= half() {
        return Err(Error::MajorityNotAtZero);
    }
    let layer_payoffs: Vec<S> = (0..=d).map(|k| layer_payoff(params, k)).collect();
    let increasing_somewhere = layer_payoffs
        .windows(2)
        .any(|w| w[1] > w[0]);
    let shape = if increasing_somewhere {
        SequenceShape::DecreasingThenIncreasing
    } else {
        SequenceShape::MonotoneDecreasing
    };
    let top = layer_payoffs[d].clone();
    let h = half::<S>();
    let (verdict, argmax_k) = if top > h {
        (MixVerdict::AntipodalBestResponse, d)
    } else {
        (MixVerdict::EquilibriumAtMajority, 0)
    };
    Ok(MixClassification {
        verdict,
        argmax_k,
        tie_at_half: top == h,
        layer_payoffs,
        shape,
    })
}

/// Whether the antipodal regime occurs for all sufficiently large dimensions:
/// true exactly when `alpha > 1/2`.
pub fn asymptotic_antipodal<S: Scalar>(params: &MixParams<S>) -> bool {
    params.alpha > half()
}
