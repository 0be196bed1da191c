//! Cross-module invariants: conservation and partition laws, automorphism
//! invariance, equilibrium structure under majority assumptions, certificate
//! soundness, mixed-product identities, and dynamics soundness.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cubevote::conditions::{
    certify_equilibrium, check_global_sufficient, check_local_sufficient, global_threshold,
    CertificateVerdict,
};
use cubevote::constructions::{catalog, layered_d5};
use cubevote::cube::{vertices, CoordSet, Vertex};
use cubevote::dynamics::{run, GameState, MovingRule, Outcome, Player};
use cubevote::game::{
    best_responses, find_equilibria, is_equilibrium, is_k_local_equilibrium, payoff,
    payoff_via_restriction, voronoi_measures, EquilibriumSet,
};
use cubevote::measure::{Direction, Distribution};
use cubevote::mixprod::{classify, layer_payoff, tail_increment, tail_payoff, MixParams, MixVerdict};
use cubevote::sample;
use cubevote::{rat, ExactDistribution, Rational};

fn one() -> Rational {
    rat(1, 1)
}

fn half() -> Rational {
    rat(1, 2)
}

/// Exhaustive equilibrium scan straight from the definition, independent of
/// the filtered search path.
fn naive_equilibria(dist: &ExactDistribution) -> EquilibriumSet {
    let mut pairs = std::collections::BTreeSet::new();
    let br: Vec<Rational> = dist
        .vertices()
        .map(|b| {
            dist.vertices()
                .map(|a| payoff(dist, a, b))
                .max()
                .expect("nonempty")
        })
        .collect();
    for a in dist.vertices() {
        for b in dist.vertices() {
            if payoff(dist, a, b) == br[b.index() as usize]
                && payoff(dist, b, a) == br[a.index() as usize]
            {
                pairs.insert((a, b));
            }
        }
    }
    EquilibriumSet { pairs }
}

fn arb_dist(max_d: usize) -> impl Strategy<Value = ExactDistribution> {
    (1..=max_d).prop_flat_map(|d| {
        proptest::collection::vec(0u32..16, 1usize << d)
            .prop_filter("needs positive total", |ws| ws.iter().any(|w| *w > 0))
            .prop_map(move |ws| {
                let entries: Vec<(Vertex, Rational)> = ws
                    .iter()
                    .enumerate()
                    .map(|(i, w)| (Vertex(i as u32), Rational::from_integer((*w).into())))
                    .collect();
                Distribution::from_entries(d, entries, true).expect("normalizable")
            })
    })
}

proptest! {
    #[test]
    fn payoffs_conserve_and_partition(dist in arb_dist(4), a in 0u32..16, b in 0u32..16) {
        let n = 1u32 << dist.dim();
        let (a, b) = (Vertex(a % n), Vertex(b % n));
        let br = voronoi_measures(&dist, a, b);
        prop_assert!(br.v_ab >= rat(0, 1) && br.tie >= rat(0, 1) && br.v_ba >= rat(0, 1));
        prop_assert_eq!(br.v_ab.clone() + br.tie.clone() + br.v_ba.clone(), one());
        prop_assert_eq!(br.p1() + br.p2(), one());
        prop_assert_eq!(payoff(&dist, a, b) + payoff(&dist, b, a), one());
    }

    #[test]
    fn payoff_is_automorphism_invariant(
        dist in arb_dist(4),
        perm_seed in proptest::collection::vec(0u32..1000, 6),
        mask in 0u32..16,
        a in 0u32..16,
        b in 0u32..16,
    ) {
        let d = dist.dim();
        let n = 1u32 << d;
        let (a, b) = (Vertex(a % n), Vertex(b % n));
        // Derive a permutation of 1..=d from the seed by sorting.
        let mut order: Vec<usize> = (1..=d).collect();
        order.sort_by_key(|i| perm_seed[i - 1]);
        let mut perm = vec![0usize; d];
        for (rank, &coord) in order.iter().enumerate() {
            perm[coord - 1] = rank + 1;
        }
        let mask = Vertex(mask % n);

        let transformed = dist.permute_coords(&perm).flip_coords(mask);
        let map = |v: Vertex| {
            let mut image = Vertex::ZERO;
            for i in 1..=d {
                if v.bit(i) {
                    image = image.with_bit(perm[i - 1], true);
                }
            }
            image.flip(mask)
        };
        prop_assert_eq!(
            payoff(&transformed, map(a), map(b)),
            payoff(&dist, a, b)
        );
    }

    #[test]
    fn restriction_agrees_with_direct_payoff(dist in arb_dist(4), a in 0u32..16, b in 0u32..16) {
        let n = 1u32 << dist.dim();
        let (a, b) = (Vertex(a % n), Vertex(b % n));
        if a != b {
            prop_assert_eq!(payoff_via_restriction(&dist, a, b).unwrap(), payoff(&dist, a, b));
        }
    }

    #[test]
    fn k_local_failures_are_monotone(dist in arb_dist(4), a in 0u32..16, b in 0u32..16) {
        let d = dist.dim();
        let n = 1u32 << d;
        let (a, b) = (Vertex(a % n), Vertex(b % n));
        let mut failed = false;
        for k in 0..=d {
            let ok = is_k_local_equilibrium(&dist, a, b, k).unwrap();
            if failed {
                prop_assert!(!ok, "k-local failure must persist for larger k");
            }
            failed = failed || !ok;
        }
        prop_assert_eq!(
            is_k_local_equilibrium(&dist, a, b, d).unwrap(),
            is_equilibrium(&dist, a, b)
        );
    }

    #[test]
    fn filtered_equilibrium_search_matches_naive_scan(dist in arb_dist(3)) {
        prop_assert_eq!(find_equilibria(&dist), naive_equilibria(&dist));
    }
}

#[test]
fn equilibria_collapse_to_majority_point_under_strict_majorities() {
    // With every marginal strictly above 1/2, the only possible equilibrium
    // is co-location at the majority point.
    for d in 2..=7 {
        let mut rng = ChaCha8Rng::seed_from_u64(0xA11CE + d as u64);
        for _ in 0..100 {
            let dist = sample::zero_majority_mixture(&mut rng, d, &rat(11, 20), 240);
            let report = dist.majority_report();
            let m = match report.majority_point {
                Some(m) => m,
                None => continue, // balanced coordinate: outside this property
            };
            let eq = find_equilibria(&dist);
            assert!(
                eq.is_empty() || (eq.len() == 1 && eq.contains(m, m)),
                "unexpected equilibria {eq:?} at d = {d}"
            );
        }
    }
}

#[test]
fn balanced_equilibria_stay_in_majority_subcube() {
    for d in 2..=4 {
        let mut rng = ChaCha8Rng::seed_from_u64(0xBA1A + d as u64);
        for round in 0..40 {
            let balanced = CoordSet::from_coords(&[1 + (round % d)]);
            let dist = sample::with_balanced_coords(&mut rng, d, balanced, 120);
            let report = dist.majority_report();
            let eq = find_equilibria(&dist);
            assert_eq!(eq, naive_equilibria(&dist), "filter must not lose pairs");
            for &(a, b) in eq.iter() {
                for i in 1..=d {
                    if report.free_coords.contains(i) {
                        continue;
                    }
                    let majority_bit = report.marginals[i - 1] < half();
                    assert_eq!(a.bit(i), majority_bit);
                    assert_eq!(b.bit(i), majority_bit);
                }
            }
        }
    }
}

#[test]
fn monotone_distributions_have_corner_equilibria() {
    for d in 2..=5 {
        let mut rng = ChaCha8Rng::seed_from_u64(0x303 + d as u64);
        for _ in 0..25 {
            let dec = sample::monotone(&mut rng, d, Direction::Decreasing);
            assert!(dec.is_monotone(Direction::Decreasing));
            assert!(is_equilibrium(&dec, Vertex::ZERO, Vertex::ZERO));

            let inc = sample::monotone(&mut rng, d, Direction::Increasing);
            assert!(inc.is_monotone(Direction::Increasing));
            let top = Vertex::all_ones(d);
            assert!(is_equilibrium(&inc, top, top));
        }
    }
}

#[test]
fn threshold_checkers_are_sound() {
    for d in 2..=6 {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5EED + d as u64);
        for _ in 0..40 {
            let dist = sample::zero_majority_mixture(&mut rng, d, &global_threshold(d), 300);
            match check_global_sufficient(&dist) {
                Ok(verdict) => assert!(verdict.holds),
                // The d = 2 threshold is exactly 1/2, so a base putting no
                // mass on some half-cube leaves that coordinate balanced.
                Err(cubevote::Error::BalancedCoordinate { .. }) => {}
                Err(e) => panic!("{e}"),
            }
            assert!(is_equilibrium(&dist, Vertex::ZERO, Vertex::ZERO));
        }
        for k in 1..=3.min(d) {
            let beta = cubevote::conditions::local_threshold(k);
            for _ in 0..40 {
                let dist = sample::zero_majority_mixture(&mut rng, d, &beta, 300);
                match check_local_sufficient(&dist, k) {
                    Ok(verdict) => assert!(verdict.holds),
                    Err(cubevote::Error::BalancedCoordinate { .. }) => {}
                    Err(e) => panic!("{e}"),
                }
                assert!(is_k_local_equilibrium(&dist, Vertex::ZERO, Vertex::ZERO, k).unwrap());
            }
        }
    }
}

#[test]
fn certificates_agree_with_equilibrium_checks() {
    // Catalog entries with a majority point.
    for entry in catalog() {
        let dist = &entry.distribution;
        let report = dist.majority_report();
        let Some(m) = report.majority_point else { continue };
        let (canon, _) = dist.canonicalize_zero_majority().unwrap();
        let cert = certify_equilibrium(&canon, &[(1, 0), (2, 1)]).unwrap();
        assert_eq!(
            cert.verdict == CertificateVerdict::Certified,
            is_equilibrium(dist, m, m),
            "certificate mismatch on {}",
            entry.name
        );
    }
    // Seeded distributions across a range of tilts.
    for d in 2..=6 {
        let mut rng = ChaCha8Rng::seed_from_u64(0xCE47 + d as u64);
        for round in 0..30i64 {
            let beta = rat(11 + (round % 8), 20);
            let dist = sample::zero_majority_mixture(&mut rng, d, &beta, 200);
            if dist.majority_report().majority_point != Some(Vertex::ZERO) {
                continue;
            }
            let cert = certify_equilibrium(&dist, &[(1, 0), (2, 1)]).unwrap();
            assert_eq!(
                cert.verdict == CertificateVerdict::Certified,
                is_equilibrium(&dist, Vertex::ZERO, Vertex::ZERO)
            );
        }
    }
}

#[test]
fn layered_example_closed_forms_hold_symbolically() {
    let a = |s: &str| Vertex::from_bitstring(s, 5).unwrap();
    for (num, den) in [(1i64, 8i64), (1, 4), (1, 2)] {
        let eps = rat(num, den);
        let dist: ExactDistribution = layered_d5(&eps).unwrap();
        let want = half() - eps.clone() / rat(8, 1);
        assert_eq!(payoff(&dist, a("00000"), a("11110")), want);
        assert_eq!(payoff(&dist, a("11000"), a("11111")), want);
        assert_eq!(payoff(&dist, a("01111"), a("11100")), want);
        // Coefficient patterns, verified against the weight table.
        let w0 = dist.weight(Vertex::ZERO).clone();
        let w2 = dist.weight(a("11000")).clone();
        let w4 = dist.weight(a("11110")).clone();
        assert_eq!(
            payoff(&dist, a("00000"), a("11110")),
            w0.clone() + rat(4, 1) * w2.clone() + half() * rat(6, 1) * w2.clone()
        );
        assert_eq!(
            payoff(&dist, a("11000"), a("11111")),
            w0 + rat(7, 1) * w2.clone()
        );
        assert_eq!(
            payoff(&dist, a("01111"), a("11100")),
            rat(3, 1) * w4 + rat(5, 1) * w2
        );
    }
}

#[test]
fn tail_identities_hold_for_seeded_parameters() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7A11);
    for _ in 0..12 {
        let num = 1 + rand::Rng::random_range(&mut rng, 0..62i64);
        let p = rat(num, 63);
        if p == half() {
            continue;
        }
        for k in 0..=20usize {
            // Increment identity.
            assert_eq!(
                tail_payoff(&p, k + 1).unwrap() - tail_payoff(&p, k).unwrap(),
                tail_increment(&p, k).unwrap()
            );
        }
        // Pairing and strict ordering between pairs.
        for i in 1..=10usize {
            let lo = tail_payoff(&p, 2 * i - 1).unwrap();
            let hi = tail_payoff(&p, 2 * i).unwrap();
            assert_eq!(lo, hi);
            let next = tail_payoff(&p, 2 * i + 1).unwrap();
            if p > half() {
                assert!(next > hi);
            } else {
                assert!(next < hi);
            }
        }
        let x0 = tail_payoff(&p, 0).unwrap();
        let x1 = tail_payoff(&p, 1).unwrap();
        assert_eq!(x0, half());
        assert_eq!(x1, p);
    }
}

#[test]
fn layer_payoff_bridges_to_brute_force() {
    let params = MixParams::new(rat(2, 3), rat(1, 5), rat(3, 5)).unwrap();
    for d in 1..=10usize {
        let dist = params.distribution(d).unwrap();
        for x in vertices(d) {
            let k = x.ones() as usize;
            assert_eq!(
                payoff(&dist, x, Vertex::ZERO),
                layer_payoff(&params, k),
                "d = {d}, |X| = {k}"
            );
        }
    }
}

#[test]
fn mix_dichotomy_on_seeded_grid() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xD1C0);
    let mut tested = 0;
    while tested < 25 {
        let a = rat(1 + rand::Rng::random_range(&mut rng, 0..30i64), 31);
        let p1 = rat(1 + rand::Rng::random_range(&mut rng, 0..14i64), 31);
        let p2 = rat(16 + rand::Rng::random_range(&mut rng, 0..15i64), 31);
        let Ok(params) = MixParams::new(a, p1, p2) else { continue };
        if params.marginal_zero() <= half() {
            continue;
        }
        tested += 1;
        for d in 1..=7usize {
            let c = classify(&params, d).unwrap();
            let dist = params.distribution(d).unwrap();
            let br = best_responses(&dist, Vertex::ZERO);
            // The maximum over all responses is attained at the majority
            // point or at its antipode.
            let top = c.layer_payoffs[d].clone();
            let expected_value = if top > half() { top.clone() } else { half() };
            assert_eq!(br.value, expected_value);
            match c.verdict {
                MixVerdict::EquilibriumAtMajority => {
                    assert!(br.argmax.contains(&Vertex::ZERO));
                    assert!(is_equilibrium(&dist, Vertex::ZERO, Vertex::ZERO));
                }
                MixVerdict::AntipodalBestResponse => {
                    assert!(br.argmax.contains(&Vertex::all_ones(d)));
                    assert!(!is_equilibrium(&dist, Vertex::ZERO, Vertex::ZERO));
                }
            }
            // Unimodality: differences are nonpositive then nonnegative.
            let diffs: Vec<Rational> = c
                .layer_payoffs
                .windows(2)
                .map(|w| w[1].clone() - w[0].clone())
                .collect();
            let mut seen_positive = false;
            for diff in &diffs {
                if *diff > rat(0, 1) {
                    seen_positive = true;
                } else if *diff < rat(0, 1) {
                    assert!(!seen_positive, "payoff sequence dipped after rising");
                }
            }
        }
    }
}

#[test]
fn dynamics_steps_strictly_improve_and_reach_sound_outcomes() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xD7A);
    for d in 2..=4 {
        for _ in 0..10 {
            let dist = sample::simplex(&mut rng, d, 97);
            let start = GameState::new(
                sample::vertex(&mut rng, d),
                sample::vertex(&mut rng, d),
                Player::One,
            );
            for rule in [MovingRule::GlobalBest, MovingRule::NearestImproving] {
                let budget = 2 * 4usize.pow(d as u32) * 2 + 2;
                let traj = run(&dist, start, rule, budget).unwrap();
                assert_ne!(traj.outcome, Outcome::Truncated { max_steps: budget });
                for pair in traj.states.windows(2) {
                    let (before, after) = (&pair[0], &pair[1]);
                    let (own_before, own_after, opp) = match before.mover {
                        Player::One => (before.pos1, after.pos1, before.pos2),
                        Player::Two => (before.pos2, after.pos2, before.pos1),
                    };
                    if own_before != own_after {
                        assert!(
                            payoff(&dist, own_after, opp) > payoff(&dist, own_before, opp),
                            "non-improving move"
                        );
                    }
                }
                if traj.outcome == Outcome::ReachedEquilibrium {
                    let last = traj.final_state();
                    assert!(is_equilibrium(&dist, last.pos1, last.pos2));
                }
            }
        }
    }
}
