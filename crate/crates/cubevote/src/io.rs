//! Serialization: the distribution file format, exact rational strings,
//! machine-readable reports, and trajectory export.
//!
//! A distribution file is JSON:
//!
//! ```json
//! {
//!   "d": 3,
//!   "weights": [
//!     {"vertex": "001", "weight": "0.3"},
//!     {"vertex": "111", "weight": "1/10"}
//!   ],
//!   "normalize": false
//! }
//! ```
//!
//! Vertices are bitstrings with coordinate 1 leftmost. Weights are exact
//! rational strings: `"a/b"`, an integer, or a terminating decimal (which
//! parses exactly, e.g. `"0.3"` is 3/10). Unlisted vertices get weight 0.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::cube::Vertex;
use crate::dynamics::{Outcome, Player, Trajectory};
use crate::error::Error;
use crate::game::payoff;
use crate::measure::Distribution;
use crate::Rational;
use crate::DEFAULT_DIM_CAP;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeightEntry {
    pub vertex: String,
    pub weight: String,
}

/// On-disk form of a distribution.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DistributionFile {
    pub d: usize,
    pub weights: Vec<WeightEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normalize: Option<bool>,
}

/// Parse an exact rational: `"a/b"`, an integer, or a terminating decimal.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::parse("empty rational string"));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::parse(format!("bad numerator in \"{s}\"")))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::parse(format!("bad denominator in \"{s}\"")))?;
        if d == BigInt::from(0) {
            return Err(Error::parse(format!("zero denominator in \"{s}\"")));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let (sign, int_digits) = match int_part.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, int_part.strip_prefix('+').unwrap_or(int_part)),
        };
        let int_digits = if int_digits.is_empty() { "0" } else { int_digits };
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::parse(format!("bad decimal \"{s}\"")));
        }
        let int_val: BigInt = int_digits
            .parse()
            .map_err(|_| Error::parse(format!("bad decimal \"{s}\"")))?;
        let frac_val: BigInt = frac_part
            .parse()
            .map_err(|_| Error::parse(format!("bad decimal \"{s}\"")))?;
        let scale = BigInt::from(10).pow(frac_part.len() as u32);
        let numer = int_val * &scale + frac_val;
        return Ok(Rational::new(BigInt::from(sign) * numer, scale));
    }
    let n: BigInt = s
        .parse()
        .map_err(|_| Error::parse(format!("bad rational \"{s}\"")))?;
    Ok(Rational::from_integer(n))
}

/// Exact string form that [`parse_rational`] round-trips: `"a/b"`, or just
/// the numerator for integers.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Advisory decimal approximation at 12 significant digits. Never used in
/// any comparison.
pub fn approx_decimal(r: &Rational) -> String {
    match r.to_f64() {
        Some(v) => format!("{v:.11e}"),
        None => "overflow".to_string(),
    }
}

/// Validate and convert a parsed file into a distribution.
pub fn distribution_from_file(file: &DistributionFile) -> Result<Distribution<Rational>, Error> {
    distribution_from_file_with_cap(file, DEFAULT_DIM_CAP)
}

pub fn distribution_from_file_with_cap(
    file: &DistributionFile,
    cap: usize,
) -> Result<Distribution<Rational>, Error> {
    let mut entries = Vec::with_capacity(file.weights.len());
    for (idx, entry) in file.weights.iter().enumerate() {
        let vertex = Vertex::from_bitstring(&entry.vertex, file.d).map_err(|e| {
            Error::parse(format!("weights[{idx}] (vertex \"{}\"): {e}", entry.vertex))
        })?;
        let weight = parse_rational(&entry.weight).map_err(|e| {
            Error::parse(format!("weights[{idx}] (vertex \"{}\"): {e}", entry.vertex))
        })?;
        entries.push((vertex, weight));
    }
    Distribution::from_entries_with_cap(file.d, entries, file.normalize.unwrap_or(false), cap)
}

/// Export with one entry per nonzero weight, in ascending vertex order.
pub fn distribution_to_file(dist: &Distribution<Rational>) -> DistributionFile {
    let weights = dist
        .vertices()
        .filter(|v| !dist.weight(*v).is_zero())
        .map(|v| WeightEntry {
            vertex: v.bitstring(dist.dim()),
            weight: format_rational(dist.weight(v)),
        })
        .collect();
    DistributionFile {
        d: dist.dim(),
        weights,
        normalize: None,
    }
}

pub fn parse_distribution_str(text: &str) -> Result<Distribution<Rational>, Error> {
    parse_distribution_str_with_cap(text, DEFAULT_DIM_CAP)
}

pub fn parse_distribution_str_with_cap(
    text: &str,
    cap: usize,
) -> Result<Distribution<Rational>, Error> {
    let file: DistributionFile =
        serde_json::from_str(text).map_err(|e| Error::parse(format!("invalid JSON: {e}")))?;
    distribution_from_file_with_cap(&file, cap)
}

/// Stable content digest of a distribution: SHA-256 over the canonical
/// `d;vertex=weight;...` rendering of the nonzero entries.
pub fn distribution_digest(dist: &Distribution<Rational>) -> String {
    let mut canonical = format!("d={};", dist.dim());
    for v in dist.vertices() {
        let w = dist.weight(v);
        if !w.is_zero() {
            canonical.push_str(&format!("{}={};", v.index(), w));
        }
    }
    let hash = Sha256::digest(canonical.as_bytes());
    format!("sha256:{}", hex_encode(&hash))
}

fn hex_encode(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Envelope for every machine-readable command report.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input_digest: Option<String>,
    pub timing_ms: u128,
    pub results: serde_json::Value,
}

/// A rational rendered for a report: exact string plus advisory decimal.
pub fn rational_json(r: &Rational) -> serde_json::Value {
    serde_json::json!({
        "exact": format_rational(r),
        "approx": approx_decimal(r),
    })
}

pub fn player_name(p: Player) -> &'static str {
    match p {
        Player::One => "player1",
        Player::Two => "player2",
    }
}

/// Trajectory as JSON: one record per visited state with both payoffs.
pub fn trajectory_json(dist: &Distribution<Rational>, traj: &Trajectory) -> serde_json::Value {
    let d = dist.dim();
    let states: Vec<serde_json::Value> = traj
        .states
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let p1 = payoff(dist, s.pos1, s.pos2);
            serde_json::json!({
                "step": i,
                "pos1": s.pos1.bitstring(d),
                "pos2": s.pos2.bitstring(d),
                "mover": player_name(s.mover),
                "p1": rational_json(&p1),
                "p2": rational_json(&(Rational::from_integer(1.into()) - p1.clone())),
            })
        })
        .collect();
    let outcome = match traj.outcome {
        Outcome::ReachedEquilibrium => serde_json::json!({"kind": "equilibrium"}),
        Outcome::Cycle {
            entry_index,
            period,
        } => serde_json::json!({"kind": "cycle", "entry_index": entry_index, "period": period}),
        Outcome::Truncated { max_steps } => {
            serde_json::json!({"kind": "truncated", "max_steps": max_steps})
        }
    };
    serde_json::json!({ "outcome": outcome, "states": states })
}

/// Trajectory as CSV with header `step,mover,pos1,pos2,p1,p2`.
pub fn trajectory_csv(dist: &Distribution<Rational>, traj: &Trajectory) -> String {
    let d = dist.dim();
    let mut out = String::from("step,mover,pos1,pos2,p1,p2\n");
    for (i, s) in traj.states.iter().enumerate() {
        let p1 = payoff(dist, s.pos1, s.pos2);
        let p2 = Rational::from_integer(1.into()) - p1.clone();
        out.push_str(&format!(
            "{i},{},{},{},{},{}\n",
            player_name(s.mover),
            s.pos1.bitstring(d),
            s.pos2.bitstring(d),
            format_rational(&p1),
            format_rational(&p2),
        ));
    }
    out
}
