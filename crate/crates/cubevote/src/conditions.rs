//! Sufficient conditions for equilibria at the majority point.
//!
//! All checkers expect the distribution in zero-majority form (every marginal
//! strictly above 1/2, majority point at the all-zeros vertex); callers with
//! a different orientation should canonicalize first. The checkers are
//! one-sided: a failed condition says nothing about equilibrium existence.

use std::collections::{BTreeMap, BTreeSet};

use crate::cube::{CoordSet, Vertex};
use crate::error::Error;
use crate::game::payoff;
use crate::measure::Distribution;
use crate::scalar::{binomial, frac, half, int, Scalar};

/// Outcome of a per-coordinate threshold check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionVerdict<S> {
    pub holds: bool,
    pub threshold: S,
    /// `marginal_zero(i) - threshold` for each coordinate; the condition
    /// holds exactly when every slack is nonnegative.
    pub per_coordinate_slack: Vec<S>,
}

/// Why a layer is known to contain no profitable deviation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LayerJustification {
    /// Covered by the coalition-weight bound with parameters `(t, m)`.
    Rule { t: usize, m: usize },
    /// Settled by exhaustively scanning the layer.
    BruteForce,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertificateVerdict {
    Certified,
    /// Some vertex on this layer strictly beats the majority point.
    NotCertified { failing_layer: usize },
}

/// Layer-by-layer exclusion record proving (or refuting) that co-locating at
/// the majority point is an equilibrium.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquilibriumCertificate {
    pub excluded_layers: BTreeMap<usize, LayerJustification>,
    pub verdict: CertificateVerdict,
}

/// Marginal threshold above which co-locating at the majority point is
/// guaranteed to be an equilibrium: `3/4 - 1/(4d)` for odd `d` and
/// `3/4 - 1/(4(d-1))` for even `d`; `1/2` when `d = 1`.
pub fn global_threshold<S: Scalar>(d: usize) -> S {
    assert!(d >= 1, "dimension must be at least 1");
    if d % 2 == 1 {
        frac::<S>(3, 4) - S::one() / int(4 * d as u64)
    } else if d == 2 {
        half()
    } else {
        frac::<S>(3, 4) - S::one() / int(4 * (d as u64 - 1))
    }
}

/// Marginal threshold guaranteeing a `k`-local equilibrium at the majority
/// point: `3/4 - 1/(4k)`.
pub fn local_threshold<S: Scalar>(k: usize) -> S {
    assert!(k >= 1, "radius must be at least 1");
    frac::<S>(3, 4) - S::one() / int(4 * k as u64)
}

/// Check every marginal against [`global_threshold`].
pub fn check_global_sufficient<S: Scalar>(
    dist: &Distribution<S>,
) -> Result<ConditionVerdict<S>, Error> {
    threshold_verdict(dist, global_threshold(dist.dim()))
}

/// Check every marginal against [`local_threshold`] for radius `k`.
pub fn check_local_sufficient<S: Scalar>(
    dist: &Distribution<S>,
    k: usize,
) -> Result<ConditionVerdict<S>, Error> {
    if k < 1 || k > dist.dim() {
        return Err(Error::BadRadius { k, d: dist.dim() });
    }
    threshold_verdict(dist, local_threshold(k))
}

fn threshold_verdict<S: Scalar>(
    dist: &Distribution<S>,
    threshold: S,
) -> Result<ConditionVerdict<S>, Error> {
    let h = half::<S>();
    let mut slacks = Vec::with_capacity(dist.dim());
    let mut holds = true;
    for i in 1..=dist.dim() {
        let w0 = dist.marginal_zero(i).expect("coord in range");
        if w0 == h {
            return Err(Error::BalancedCoordinate { coord: i });
        }
        let slack = w0 - threshold.clone();
        holds = holds && slack >= S::zero();
        slacks.push(slack);
    }
    Ok(ConditionVerdict {
        holds,
        threshold,
        per_coordinate_slack: slacks,
    })
}

/// The coalition-weight level that rules out profitable deviations on layer
/// `k` using size-`t` coordinate sets with tolerance `m`:
///
/// `1/2 * (1 + sum_{i=0}^{m} C(floor((k-1)/2), t-i) * C(ceil((k+1)/2), i) / C(k, t))`
///
/// with `C(n, r) = 0` whenever `r > n`. Requires `1 <= t <= k` and `m <= t/2`.
pub fn layer_exclusion_bound<S: Scalar>(t: usize, m: usize, k: usize) -> Result<S, Error> {
    if t < 1 || 2 * m > t || t > k {
        return Err(Error::BadParameters { t, m, k });
    }
    let lo = (k - 1) / 2;
    let hi = k / 2 + 1;
    let mut sum = S::zero();
    for i in 0..=m {
        sum = sum + binomial::<S>(lo, t - i) * binomial::<S>(hi, i);
    }
    Ok(half::<S>() * (S::one() + sum / binomial::<S>(k, t)))
}

/// Every layer `k` in `[t, d]` on which no deviation can be profitable,
/// because `coalition_weight(I, m)` reaches [`layer_exclusion_bound`] for
/// every size-`t` coordinate set `I`.
pub fn excluded_layers<S: Scalar>(
    dist: &Distribution<S>,
    t: usize,
    m: usize,
) -> Result<BTreeSet<usize>, Error> {
    let d = dist.dim();
    if t < 1 || 2 * m > t || t > d {
        return Err(Error::BadParameters { t, m, k: d });
    }
    let subsets = CoordSet::subsets_of_size(d, t);
    let coalition: Vec<S> = subsets
        .iter()
        .map(|&set| dist.coalition_weight(set, m).expect("valid set"))
        .collect();
    let mut out = BTreeSet::new();
    for k in t..=d {
        let bound = layer_exclusion_bound::<S>(t, m, k)?;
        if coalition.iter().all(|w| *w >= bound) {
            out.insert(k);
        }
    }
    Ok(out)
}

/// Certify that co-locating at the all-zeros vertex is an equilibrium by
/// excluding every layer `1..=d`, first through the supplied `(t, m)` rules
/// and then by exhaustive per-layer scans. A layer fails only when some
/// vertex on it strictly beats the majority point (exact payoff above 1/2).
pub fn certify_equilibrium<S: Scalar>(
    dist: &Distribution<S>,
    rules: &[(usize, usize)],
) -> Result<EquilibriumCertificate, Error> {
    let d = dist.dim();
    let h = half::<S>();
    for i in 1..=d {
        if dist.marginal_zero(i).expect("coord in range") == h {
            return Err(Error::BalancedCoordinate { coord: i });
        }
    }
    let mut by_rule: BTreeMap<usize, LayerJustification> = BTreeMap::new();
    for &(t, m) in rules {
        for k in excluded_layers(dist, t, m)? {
            by_rule
                .entry(k)
                .or_insert(LayerJustification::Rule { t, m });
        }
    }
    let mut excluded = BTreeMap::new();
    for k in 1..=d {
        if let Some(&j) = by_rule.get(&k) {
            excluded.insert(k, j);
            continue;
        }
        let beaten = dist
            .vertices()
            .filter(|v| v.ones() as usize == k)
            .any(|v| payoff(dist, v, Vertex::ZERO) > h);
        if beaten {
            return Ok(EquilibriumCertificate {
                excluded_layers: excluded,
                verdict: CertificateVerdict::NotCertified { failing_layer: k },
            });
        }
        excluded.insert(k, LayerJustification::BruteForce);
    }
    Ok(EquilibriumCertificate {
        excluded_layers: excluded,
        verdict: CertificateVerdict::Certified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{coalition_example, intro_example, no_equilibrium_odd};
    use crate::rat;
    use crate::Rational;

    #[test]
    fn global_thresholds() {
        assert_eq!(global_threshold::<Rational>(1), rat(1, 2));
        assert_eq!(global_threshold::<Rational>(2), rat(1, 2));
        assert_eq!(global_threshold::<Rational>(3), rat(2, 3));
        assert_eq!(global_threshold::<Rational>(4), rat(2, 3));
        assert_eq!(global_threshold::<Rational>(5), rat(7, 10));
    }

    #[test]
    fn local_thresholds() {
        assert_eq!(local_threshold::<Rational>(1), rat(1, 2));
        assert_eq!(local_threshold::<Rational>(2), rat(5, 8));
    }

    #[test]
    fn global_check_examples() {
        // Marginals 3/5 sit below the dimension-3 threshold 2/3.
        let v = check_global_sufficient(&coalition_example()).unwrap();
        assert!(!v.holds);
        assert_eq!(v.threshold, rat(2, 3));
        assert!(v.per_coordinate_slack.iter().all(|s| *s == rat(-1, 15)));

        let point: Distribution<Rational> =
            Distribution::point_mass(3, Vertex::ZERO).unwrap();
        let v = check_global_sufficient(&point).unwrap();
        assert!(v.holds);
        assert!(v.per_coordinate_slack.iter().all(|s| *s == rat(1, 3)));

        let sharp = no_equilibrium_odd(3, &rat(1, 10)).unwrap();
        assert!(!check_global_sufficient(&sharp).unwrap().holds);

        let u: Distribution<Rational> = Distribution::uniform(2).unwrap();
        assert_eq!(
            check_global_sufficient(&u).unwrap_err(),
            Error::BalancedCoordinate { coord: 1 }
        );
    }

    #[test]
    fn local_check_examples() {
        // The introductory example satisfies the radius-1 condition but not
        // radius 2, even though radius 2 actually holds: the condition is
        // sufficient, not necessary.
        let dist = intro_example();
        assert!(check_local_sufficient(&dist, 1).unwrap().holds);
        assert!(!check_local_sufficient(&dist, 2).unwrap().holds);
        assert!(crate::game::is_k_local_equilibrium(&dist, Vertex::ZERO, Vertex::ZERO, 2).unwrap());

        assert_eq!(
            check_local_sufficient(&dist, 0).unwrap_err(),
            Error::BadRadius { k: 0, d: 3 }
        );
        assert_eq!(
            check_local_sufficient(&dist, 4).unwrap_err(),
            Error::BadRadius { k: 4, d: 3 }
        );
    }

    #[test]
    fn layer_exclusion_bounds() {
        assert_eq!(layer_exclusion_bound::<Rational>(1, 0, 3).unwrap(), rat(2, 3));
        assert_eq!(layer_exclusion_bound::<Rational>(2, 1, 2).unwrap(), rat(1, 2));
        assert_eq!(layer_exclusion_bound::<Rational>(2, 1, 3).unwrap(), rat(5, 6));
        for k in 1..=64usize {
            let want = if k % 2 == 1 {
                rat(3, 4) - rat(1, 4 * k as i64)
            } else {
                rat(3, 4) - rat(1, 2 * k as i64)
            };
            assert_eq!(layer_exclusion_bound::<Rational>(1, 0, k).unwrap(), want);
        }
        assert!(layer_exclusion_bound::<Rational>(2, 2, 4).is_err());
        assert!(layer_exclusion_bound::<Rational>(3, 1, 2).is_err());
        assert!(layer_exclusion_bound::<Rational>(0, 0, 1).is_err());
    }

    #[test]
    fn global_threshold_dominates_layer_bounds() {
        for d in 1..=64usize {
            let max = (1..=d)
                .map(|k| layer_exclusion_bound::<Rational>(1, 0, k).unwrap())
                .max()
                .unwrap();
            assert_eq!(global_threshold::<Rational>(d), max, "d = {d}");
        }
    }

    #[test]
    fn excluded_layer_examples() {
        let dist = coalition_example();
        let pairs = excluded_layers(&dist, 2, 1).unwrap();
        assert_eq!(pairs, BTreeSet::from([2, 3]));

        let singles = excluded_layers(&dist, 1, 0).unwrap();
        assert_eq!(singles, BTreeSet::from([1, 2]));

        assert!(excluded_layers(&dist, 2, 2).is_err());
    }

    #[test]
    fn uniform_exclusions_only_at_boundary_bounds() {
        // Coalition weights of the uniform measure sit at their
        // combinatorial ratios, so only layers whose bound is exactly 1/2
        // can be excluded.
        let u: Distribution<Rational> = Distribution::uniform(5).unwrap();
        let excl = excluded_layers(&u, 3, 1).unwrap();
        for k in 3..=5usize {
            let b = layer_exclusion_bound::<Rational>(3, 1, k).unwrap();
            assert_eq!(excl.contains(&k), b == rat(1, 2), "k = {k}");
        }
        assert!(!excl.is_empty());
        assert_eq!(excluded_layers(&u, 2, 0).unwrap(), BTreeSet::new());
    }

    #[test]
    fn certification() {
        let dist = coalition_example();
        let cert = certify_equilibrium(&dist, &[(2, 1)]).unwrap();
        assert_eq!(cert.verdict, CertificateVerdict::Certified);
        assert_eq!(
            cert.excluded_layers.get(&1),
            Some(&LayerJustification::BruteForce)
        );
        assert_eq!(
            cert.excluded_layers.get(&2),
            Some(&LayerJustification::Rule { t: 2, m: 1 })
        );
        assert_eq!(
            cert.excluded_layers.get(&3),
            Some(&LayerJustification::Rule { t: 2, m: 1 })
        );

        let cert = certify_equilibrium(&intro_example(), &[]).unwrap();
        assert_eq!(
            cert.verdict,
            CertificateVerdict::NotCertified { failing_layer: 3 }
        );

        let point: Distribution<Rational> =
            Distribution::point_mass(3, Vertex::ZERO).unwrap();
        let cert = certify_equilibrium(&point, &[(1, 0)]).unwrap();
        assert_eq!(cert.verdict, CertificateVerdict::Certified);
        assert!(cert
            .excluded_layers
            .values()
            .all(|j| *j == LayerJustification::Rule { t: 1, m: 0 }));

        let u: Distribution<Rational> = Distribution::uniform(2).unwrap();
        assert_eq!(
            certify_equilibrium(&u, &[]).unwrap_err(),
            Error::BalancedCoordinate { coord: 1 }
        );
    }
}
