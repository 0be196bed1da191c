//! Two-player Voronoi voting game on the weighted discrete hypercube.
//!
//! Candidates position themselves on `{0,1}^d` (an opinion on `d` binary
//! issues); each voter backs the candidate closer in Hamming distance and
//! splits evenly on ties. The crate computes exact payoffs, best responses
//! and equilibria, checks sufficient conditions for an equilibrium at the
//! majority point, analyses mixtures of product measures in closed form,
//! and simulates best-response dynamics.
//!
//! All core math is generic over a [`Scalar`] (any ordered field from
//! `num-traits`); the shipped concrete instantiation is [`Rational`],
//! arbitrary-precision rationals, so strict inequalities and tie boundaries
//! are decided exactly. There is no floating-point rounding anywhere on the
//! rational path.
//!
//! ```
//! use cubevote::{constructions, game, cube::Vertex, rat};
//!
//! let dist = constructions::intro_example();
//! let a = Vertex::from_bitstring("111", 3).unwrap();
//! assert_eq!(game::payoff(&dist, a, Vertex::ZERO), rat(3, 5));
//! assert!(game::find_equilibria(&dist).is_empty());
//! ```

pub mod conditions;
pub mod constructions;
pub mod cube;
pub mod dynamics;
mod error;
pub mod game;
pub mod io;
pub mod measure;
pub mod mixprod;
pub mod sample;
mod scalar;

pub use error::Error;
pub use scalar::{rat, Scalar};

/// Exact arbitrary-precision rational, the default scalar everywhere.
pub type Rational = num_rational::BigRational;

/// Distribution with exact rational weights, as used by the CLI, the file
/// format, and the test suites.
pub type ExactDistribution = measure::Distribution<Rational>;

/// Largest dimension accepted by distribution constructors unless a caller
/// passes an explicit cap: dense tables and pair scans grow as `2^d` and
/// `4^d`.
pub const DEFAULT_DIM_CAP: usize = 16;

/// Largest dimension for which the command-line `equilibria` subcommand runs
/// the equilibrium search by default.
pub const DEFAULT_SCAN_CAP: usize = 12;
