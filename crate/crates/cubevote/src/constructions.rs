//! Catalog of concrete distributions with documented, machine-checkable
//! behaviour: the five-voter introductory example, the coalition-certified
//! example, the sharp no-equilibrium families, and the balanced-case
//! examples (uniform, parity-weighted, layer-weighted).

use crate::cube::{vertices, CoordSet, Vertex};
use crate::error::Error;
use crate::game::{find_equilibria, payoff};
use crate::measure::Distribution;
use crate::scalar::{binomial, frac, half, int, powi, Scalar};
use crate::Rational;

/// The five-voter example on three issues: two voters at `000` and one at
/// each of `011`, `101`, `110`. Every issue has a 3-to-2 majority for 0,
/// yet no equilibrium exists.
pub fn intro_example() -> Distribution<Rational> {
    let fifth = frac::<Rational>(1, 5);
    Distribution::from_entries(
        3,
        vec![
            (Vertex::from_bitstring("000", 3).unwrap(), frac(2, 5)),
            (Vertex::from_bitstring("011", 3).unwrap(), fifth.clone()),
            (Vertex::from_bitstring("101", 3).unwrap(), fifth.clone()),
            (Vertex::from_bitstring("110", 3).unwrap(), fifth),
        ],
        false,
    )
    .expect("valid by construction")
}

/// Weight 3/10 on each singleton vertex and 1/10 on `111`. The marginals
/// (3/5) sit below the global threshold, but the pairwise coalition weights
/// (9/10) certify the equilibrium at the majority point.
pub fn coalition_example() -> Distribution<Rational> {
    let w = frac::<Rational>(3, 10);
    Distribution::from_entries(
        3,
        vec![
            (Vertex::from_bitstring("001", 3).unwrap(), w.clone()),
            (Vertex::from_bitstring("010", 3).unwrap(), w.clone()),
            (Vertex::from_bitstring("100", 3).unwrap(), w),
            (Vertex::from_bitstring("111", 3).unwrap(), frac(1, 10)),
        ],
        false,
    )
    .expect("valid by construction")
}

/// Sharp no-equilibrium construction for odd `d`: weight `1/2 - eps` at the
/// origin and the remaining `1/2 + eps` spread evenly over layer `(d+1)/2`.
/// Every marginal equals `global_threshold(d) - eps*(1/2 + 1/(2d))`, and the
/// all-ones response beats the majority point by exactly `eps`.
pub fn no_equilibrium_odd<S: Scalar>(d: usize, eps: &S) -> Result<Distribution<S>, Error> {
    if d % 2 == 0 || d < 3 {
        return Err(Error::BadDimensionParity { d });
    }
    check_eps(eps, &half())?;
    let layer = (d + 1) / 2;
    let per = (half::<S>() + eps.clone()) / binomial(d, layer);
    let mut entries = vec![(Vertex::ZERO, half::<S>() - eps.clone())];
    for v in vertices(d) {
        if v.ones() as usize == layer {
            entries.push((v, per.clone()));
        }
    }
    Distribution::from_entries(d, entries, false)
}

/// Sharp no-equilibrium construction for even `d`: the odd construction on
/// the subcube where the last coordinate is 0. The vertex with the first
/// `d - 1` coordinates set beats the majority point by exactly `eps`.
pub fn no_equilibrium_even<S: Scalar>(d: usize, eps: &S) -> Result<Distribution<S>, Error> {
    if d % 2 == 1 || d < 4 {
        return Err(Error::BadDimensionParity { d });
    }
    check_eps(eps, &half())?;
    let per = (half::<S>() + eps.clone()) / binomial(d - 1, d / 2);
    let mut entries = vec![(Vertex::ZERO, half::<S>() - eps.clone())];
    for v in vertices(d) {
        if v.ones() as usize == d / 2 && !v.bit(d) {
            entries.push((v, per.clone()));
        }
    }
    Distribution::from_entries(d, entries, false)
}

/// Odd `d`; weight `2^{1-d}` on every even-layer vertex and 0 elsewhere.
/// Every pair of positions that is not antipodal splits the vote evenly.
pub fn parity_example<S: Scalar>(d: usize) -> Result<Distribution<S>, Error> {
    if d % 2 == 0 {
        return Err(Error::BadDimensionParity { d });
    }
    let w = powi(&half::<S>(), d - 1);
    let weights = vertices(d)
        .map(|v| {
            if v.ones() % 2 == 0 {
                w.clone()
            } else {
                S::zero()
            }
        })
        .collect();
    Distribution::from_weights(d, weights)
}

/// Balanced five-dimensional measure supported on layers 0, 2, and 4, with
/// per-vertex weights `(1-eps)/16 + 3eps/8`, `(1-eps)/16`, and
/// `(1-eps)/16 + eps/8` respectively. Has no equilibrium for any
/// `0 < eps < 3/5`.
pub fn layered_d5<S: Scalar>(eps: &S) -> Result<Distribution<S>, Error> {
    check_eps(eps, &frac(3, 5))?;
    let base = (S::one() - eps.clone()) / int(16);
    let w0 = base.clone() + frac::<S>(3, 8) * eps.clone();
    let w2 = base.clone();
    let w4 = base + frac::<S>(1, 8) * eps.clone();
    let weights = vertices(5)
        .map(|v| match v.ones() {
            0 => w0.clone(),
            2 => w2.clone(),
            4 => w4.clone(),
            _ => S::zero(),
        })
        .collect();
    Distribution::from_weights(5, weights)
}

fn check_eps<S: Scalar>(eps: &S, upper: &S) -> Result<(), Error> {
    if *eps <= S::zero() || *eps >= *upper {
        return Err(Error::EpsOutOfRange);
    }
    Ok(())
}

/// A machine-checkable statement about a catalog distribution.
#[derive(Debug, Clone)]
pub enum Claim {
    Payoff {
        a: Vertex,
        b: Vertex,
        expected: Rational,
    },
    MarginalZero {
        coord: usize,
        expected: Rational,
    },
    /// `coalition_weight(I, m)` for every size-`t` set `I`.
    CoalitionWeightAll {
        t: usize,
        m: usize,
        expected: Rational,
    },
    MajorityPoint(Option<Vertex>),
    FreeCoords(CoordSet),
    NoEquilibrium,
    EquilibriaExactly(Vec<(Vertex, Vertex)>),
    KLocalEquilibrium {
        a: Vertex,
        b: Vertex,
        k: usize,
        expected: bool,
    },
    /// Every ordered pair that is not antipodal has payoff exactly 1/2.
    NonAntipodalPayoffsHalf,
}

impl Claim {
    /// Evaluate the claim against the game semantics.
    pub fn check(&self, dist: &Distribution<Rational>) -> Result<(), String> {
        match self {
            Claim::Payoff { a, b, expected } => {
                let got = payoff(dist, *a, *b);
                if got != *expected {
                    return Err(format!(
                        "payoff({}, {}) = {got}, expected {expected}",
                        a.bitstring(dist.dim()),
                        b.bitstring(dist.dim())
                    ));
                }
            }
            Claim::MarginalZero { coord, expected } => {
                let got = dist.marginal_zero(*coord).map_err(|e| e.to_string())?;
                if got != *expected {
                    return Err(format!("marginal_zero({coord}) = {got}, expected {expected}"));
                }
            }
            Claim::CoalitionWeightAll { t, m, expected } => {
                for set in CoordSet::subsets_of_size(dist.dim(), *t) {
                    let got = dist.coalition_weight(set, *m).map_err(|e| e.to_string())?;
                    if got != *expected {
                        return Err(format!(
                            "coalition_weight({set:?}, {m}) = {got}, expected {expected}"
                        ));
                    }
                }
            }
            Claim::MajorityPoint(expected) => {
                let got = dist.majority_report().majority_point;
                if got != *expected {
                    return Err(format!("majority point {got:?}, expected {expected:?}"));
                }
            }
            Claim::FreeCoords(expected) => {
                let got = dist.majority_report().free_coords;
                if got != *expected {
                    return Err(format!("free coords {got:?}, expected {expected:?}"));
                }
            }
            Claim::NoEquilibrium => {
                if !find_equilibria(dist).is_empty() {
                    return Err("expected no equilibrium".to_string());
                }
            }
            Claim::EquilibriaExactly(pairs) => {
                let got = find_equilibria(dist);
                let want: std::collections::BTreeSet<_> = pairs.iter().copied().collect();
                if got.pairs != want {
                    return Err(format!(
                        "equilibria {:?}, expected {:?}",
                        got.pairs, want
                    ));
                }
            }
            Claim::KLocalEquilibrium { a, b, k, expected } => {
                let got = crate::game::is_k_local_equilibrium(dist, *a, *b, *k)
                    .map_err(|e| e.to_string())?;
                if got != *expected {
                    return Err(format!(
                        "is_k_local_equilibrium(k = {k}) = {got}, expected {expected}"
                    ));
                }
            }
            Claim::NonAntipodalPayoffsHalf => {
                let d = dist.dim();
                let h = half::<Rational>();
                for a in dist.vertices() {
                    for b in dist.vertices() {
                        if b != a.complement(d) && payoff(dist, a, b) != h {
                            return Err(format!(
                                "payoff({}, {}) != 1/2",
                                a.bitstring(d),
                                b.bitstring(d)
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// A named distribution together with its documented claims.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub parameters: String,
    pub distribution: Distribution<Rational>,
    pub claims: Vec<Claim>,
}

impl CatalogEntry {
    /// Check every documented claim; returns the first failure.
    pub fn verify(&self) -> Result<(), String> {
        for claim in &self.claims {
            claim
                .check(&self.distribution)
                .map_err(|e| format!("{} [{}]: {e}", self.name, self.parameters))?;
        }
        Ok(())
    }
}

fn bs(s: &str) -> Vertex {
    Vertex::from_bitstring(s, s.len()).unwrap()
}

/// All catalog entries with their default parameters.
pub fn catalog() -> Vec<CatalogEntry> {
    let mut entries = Vec::new();
    let r = crate::rat;

    entries.push(CatalogEntry {
        name: "intro_example",
        parameters: "d=3".into(),
        distribution: intro_example(),
        claims: vec![
            Claim::Payoff {
                a: bs("111"),
                b: bs("000"),
                expected: r(3, 5),
            },
            Claim::MajorityPoint(Some(Vertex::ZERO)),
            Claim::MarginalZero {
                coord: 1,
                expected: r(3, 5),
            },
            Claim::NoEquilibrium,
            Claim::KLocalEquilibrium {
                a: Vertex::ZERO,
                b: Vertex::ZERO,
                k: 2,
                expected: true,
            },
            Claim::KLocalEquilibrium {
                a: Vertex::ZERO,
                b: Vertex::ZERO,
                k: 3,
                expected: false,
            },
        ],
    });

    entries.push(CatalogEntry {
        name: "coalition_example",
        parameters: "d=3".into(),
        distribution: coalition_example(),
        claims: vec![
            Claim::MarginalZero {
                coord: 1,
                expected: r(3, 5),
            },
            Claim::MarginalZero {
                coord: 2,
                expected: r(3, 5),
            },
            Claim::MarginalZero {
                coord: 3,
                expected: r(3, 5),
            },
            Claim::CoalitionWeightAll {
                t: 2,
                m: 1,
                expected: r(9, 10),
            },
            Claim::EquilibriaExactly(vec![(Vertex::ZERO, Vertex::ZERO)]),
        ],
    });

    for d in [3usize, 5] {
        for (num, den) in [(1i64, 100i64), (1, 10)] {
            let eps = r(num, den);
            let dist = no_equilibrium_odd(d, &eps).expect("valid parameters");
            let marginal = r(3, 4) - r(1, 4 * d as i64)
                - eps.clone() * (r(1, 2) + r(1, 2 * d as i64));
            entries.push(CatalogEntry {
                name: "no_equilibrium_odd",
                parameters: format!("d={d}, eps={num}/{den}"),
                distribution: dist,
                claims: vec![
                    Claim::Payoff {
                        a: Vertex::all_ones(d),
                        b: Vertex::ZERO,
                        expected: r(1, 2) + eps.clone(),
                    },
                    Claim::MarginalZero {
                        coord: 1,
                        expected: marginal.clone(),
                    },
                    Claim::MarginalZero {
                        coord: d,
                        expected: marginal,
                    },
                    Claim::MajorityPoint(Some(Vertex::ZERO)),
                    Claim::NoEquilibrium,
                ],
            });
        }
    }

    for (num, den) in [(1i64, 100i64), (1, 10)] {
        let d = 4usize;
        let eps = r(num, den);
        let dist = no_equilibrium_even(d, &eps).expect("valid parameters");
        let marginal = r(3, 4) - r(1, 4 * (d as i64 - 1))
            - eps.clone() * (r(1, 2) + r(1, 2 * (d as i64 - 1)));
        entries.push(CatalogEntry {
            name: "no_equilibrium_even",
            parameters: format!("d={d}, eps={num}/{den}"),
            distribution: dist,
            claims: vec![
                Claim::Payoff {
                    a: Vertex::prefix_ones(d - 1),
                    b: Vertex::ZERO,
                    expected: r(1, 2) + eps.clone(),
                },
                Claim::MarginalZero {
                    coord: 1,
                    expected: marginal,
                },
                Claim::MarginalZero {
                    coord: d,
                    expected: r(1, 1),
                },
                Claim::MajorityPoint(Some(Vertex::ZERO)),
                Claim::NoEquilibrium,
            ],
        });
    }

    let odd3: Vec<Vertex> = vertices(3).filter(|v| v.ones() % 2 == 1).collect();
    entries.push(CatalogEntry {
        name: "parity_example",
        parameters: "d=3".into(),
        distribution: parity_example(3).expect("odd dimension"),
        claims: vec![
            Claim::Payoff {
                a: bs("111"),
                b: bs("000"),
                expected: r(3, 4),
            },
            Claim::FreeCoords(CoordSet::full(3)),
            Claim::NonAntipodalPayoffsHalf,
            Claim::EquilibriaExactly(
                odd3.iter()
                    .flat_map(|&a| odd3.iter().map(move |&b| (a, b)))
                    .collect(),
            ),
        ],
    });
    entries.push(CatalogEntry {
        name: "parity_example",
        parameters: "d=5".into(),
        distribution: parity_example(5).expect("odd dimension"),
        claims: vec![
            Claim::FreeCoords(CoordSet::full(5)),
            Claim::NonAntipodalPayoffsHalf,
        ],
    });

    for (num, den) in [(1i64, 4i64), (1, 2)] {
        let eps = r(num, den);
        let dist = layered_d5(&eps).expect("valid eps");
        entries.push(CatalogEntry {
            name: "layered_d5",
            parameters: format!("eps={num}/{den}"),
            distribution: dist,
            claims: vec![
                Claim::FreeCoords(CoordSet::full(5)),
                Claim::Payoff {
                    a: bs("00000"),
                    b: bs("11110"),
                    expected: r(1, 2) - eps.clone() / r(8, 1),
                },
                // The layer-2 versus all-ones payoff: the cell of the
                // layer-2 player holds the origin plus seven layer-2
                // vertices (including its own), giving 1/2 - eps/8.
                Claim::Payoff {
                    a: bs("11000"),
                    b: bs("11111"),
                    expected: r(1, 2) - eps.clone() / r(8, 1),
                },
                Claim::Payoff {
                    a: bs("01111"),
                    b: bs("11100"),
                    expected: r(1, 2) - eps.clone() / r(8, 1),
                },
                Claim::NoEquilibrium,
            ],
        });
    }

    for d in [1usize, 2, 3] {
        let dist: Distribution<Rational> = Distribution::uniform(d).expect("small dimension");
        let mut claims = vec![Claim::FreeCoords(CoordSet::full(d))];
        if d == 2 {
            claims.push(Claim::EquilibriaExactly(
                vertices(2)
                    .flat_map(|a| vertices(2).map(move |b| (a, b)))
                    .collect(),
            ));
        }
        entries.push(CatalogEntry {
            name: "uniform",
            parameters: format!("d={d}"),
            distribution: dist,
            claims,
        });
    }

    entries
}

/// Build a catalog distribution by name with explicit parameters, as used by
/// the command-line `construct` subcommand.
pub fn construct_by_name(
    name: &str,
    d: Option<usize>,
    eps: Option<&Rational>,
) -> Result<Distribution<Rational>, Error> {
    match name {
        "intro_example" => Ok(intro_example()),
        "coalition_example" => Ok(coalition_example()),
        "no_equilibrium_odd" => {
            let d = d.ok_or_else(|| Error::parse("no_equilibrium_odd requires --d"))?;
            let eps = eps.ok_or_else(|| Error::parse("no_equilibrium_odd requires --eps"))?;
            no_equilibrium_odd(d, eps)
        }
        "no_equilibrium_even" => {
            let d = d.ok_or_else(|| Error::parse("no_equilibrium_even requires --d"))?;
            let eps = eps.ok_or_else(|| Error::parse("no_equilibrium_even requires --eps"))?;
            no_equilibrium_even(d, eps)
        }
        "parity_example" => {
            let d = d.ok_or_else(|| Error::parse("parity_example requires --d"))?;
            parity_example(d)
        }
        "layered_d5" => {
            let eps = eps.ok_or_else(|| Error::parse("layered_d5 requires --eps"))?;
            layered_d5(eps)
        }
        "uniform" => {
            let d = d.ok_or_else(|| Error::parse("uniform requires --d"))?;
            Distribution::uniform(d)
        }
        other => Err(Error::parse(format!(
            "unknown construction \"{other}\"; known names: intro_example, \
             coalition_example, no_equilibrium_odd, no_equilibrium_even, \
             parity_example, layered_d5, uniform"
        ))),
    }
}
