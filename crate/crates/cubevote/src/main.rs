//! Command-line front end.
//!
//! Every subcommand reads a distribution file (`--dist PATH`, or standard
//! input when omitted or `-`) and writes a JSON report to standard output.
//! `construct` writes a distribution file instead so commands compose:
//!
//! ```text
//! cubevote construct --name intro_example | cubevote payoff --a 111 --b 000
//! ```
//!
//! Exit codes: 0 success, 2 input error, 3 computation gated by the
//! dimension cap. `CUBEVOTE_DIM_CAP` overrides the construction cap and
//! `CUBEVOTE_SCAN_CAP` the equilibrium-search gate.

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use cubevote::conditions;
use cubevote::constructions;
use cubevote::cube::Vertex;
use cubevote::dynamics::{self, GameState, MovingRule, Player};
use cubevote::game;
use cubevote::io::{
    approx_decimal, distribution_digest, distribution_to_file, parse_distribution_str_with_cap,
    parse_rational, rational_json, trajectory_csv, trajectory_json, Report,
};
use cubevote::measure::CoordMajority;
use cubevote::mixprod::{self, MixParams, MixVerdict, SequenceShape};
use cubevote::{Error, ExactDistribution, Rational, DEFAULT_DIM_CAP, DEFAULT_SCAN_CAP};

#[derive(Parser)]
#[command(
    name = "cubevote",
    about = "Voronoi voting game on the weighted discrete hypercube",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Voronoi cell weights and payoffs for a position pair.
    Payoff {
        #[arg(long)]
        dist: Option<PathBuf>,
        /// First player's position as a bitstring (coordinate 1 leftmost).
        #[arg(long)]
        a: String,
        /// Second player's position.
        #[arg(long)]
        b: String,
    },
    /// Exact best-response value and full argmax set against a fixed opponent.
    BestResponse {
        #[arg(long)]
        dist: Option<PathBuf>,
        #[arg(long)]
        b: String,
    },
    /// All equilibrium pairs, or the k-local verdict at the majority point.
    Equilibria {
        #[arg(long)]
        dist: Option<PathBuf>,
        /// Check whether co-locating at the majority point is a k-local
        /// equilibrium instead of searching for equilibria.
        #[arg(long = "k-local")]
        k_local: Option<usize>,
    },
    /// Per-issue marginals, majority point or majority subcube.
    Majority {
        #[arg(long)]
        dist: Option<PathBuf>,
    },
    /// Sufficient-condition checkers (run after relabeling to zero-majority form).
    Check {
        #[arg(long)]
        dist: Option<PathBuf>,
        /// Check the global marginal threshold.
        #[arg(long)]
        thm1: bool,
        /// Check the k-local marginal threshold.
        #[arg(long)]
        local: Option<usize>,
        /// Coalition rule "t,m"; repeatable.
        #[arg(long = "rule", value_parser = parse_rule)]
        rules: Vec<(usize, usize)>,
        /// Assemble a layer-by-layer equilibrium certificate from the rules.
        #[arg(long)]
        certify: bool,
    },
    /// Write a named catalog distribution.
    Construct {
        #[arg(long)]
        name: String,
        #[arg(long)]
        d: Option<usize>,
        /// Epsilon parameter as an exact rational, e.g. "1/10" or "0.1".
        #[arg(long)]
        eps: Option<String>,
        /// Write to a file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Closed-form analysis of a mixture of two product measures.
    Mixprod {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        p1: String,
        #[arg(long)]
        p2: String,
        /// Classify the best response to the majority point on Q_d.
        #[arg(long)]
        classify: Option<usize>,
        /// CSV sweep of the layer payoff sequence up to this dimension.
        #[arg(long)]
        sweep: Option<usize>,
        /// Report the layer payoffs a_0..a_D.
        #[arg(long = "a-seq")]
        a_seq: Option<usize>,
    },
    /// Alternating best-response dynamics from a given start.
    Dynamics {
        #[arg(long)]
        dist: Option<PathBuf>,
        /// Initial positions "V1,V2" as bitstrings.
        #[arg(long)]
        init: String,
        #[arg(long, value_enum)]
        rule: RuleArg,
        #[arg(long = "max-steps", default_value_t = 10_000)]
        max_steps: usize,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RuleArg {
    Global,
    Nearest,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

fn parse_rule(s: &str) -> Result<(usize, usize), String> {
    let (t, m) = s
        .split_once(',')
        .ok_or_else(|| format!("expected \"t,m\", got \"{s}\""))?;
    let t = t.trim().parse().map_err(|_| format!("bad t in \"{s}\""))?;
    let m = m.trim().parse().map_err(|_| format!("bad m in \"{s}\""))?;
    Ok((t, m))
}

/// Failure that carries its process exit code.
struct CliError {
    code: u8,
    kind: String,
    message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            kind: "input".into(),
            message: message.into(),
        }
    }

    fn gated(message: impl Into<String>) -> Self {
        CliError {
            code: 3,
            kind: "gated".into(),
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        match err {
            Error::DimensionTooLarge { .. } => CliError::gated(err.to_string()),
            _ => CliError::input(err.to_string()),
        }
    }
}

fn env_cap(name: &str, default: usize) -> usize {
    std::env::var(name)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(default)
}

fn read_distribution(path: &Option<PathBuf>) -> Result<ExactDistribution, CliError> {
    let cap = env_cap("CUBEVOTE_DIM_CAP", DEFAULT_DIM_CAP);
    let text = match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)
            .map_err(|e| CliError::input(format!("cannot read {}: {e}", p.display())))?,
        _ => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| CliError::input(format!("cannot read standard input: {e}")))?;
            buf
        }
    };
    Ok(parse_distribution_str_with_cap(&text, cap)?)
}

fn vertex_arg(s: &str, d: usize) -> Result<Vertex, CliError> {
    Vertex::from_bitstring(s, d).map_err(CliError::from)
}

fn emit_report(command: &str, digest: Option<String>, started: Instant, results: serde_json::Value) {
    let report = Report {
        command: command.to_string(),
        input_digest: digest,
        timing_ms: started.elapsed().as_millis(),
        results,
    };
    println!("{}", serde_json::to_string_pretty(&report).expect("serializable report"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let payload = json!({
                "error": err.kind,
                "message": err.message,
            });
            eprintln!("{}", serde_json::to_string_pretty(&payload).expect("serializable error"));
            ExitCode::from(err.code)
        }
    }
}

fn dispatch(command: Command) -> Result<(), CliError> {
    let started = Instant::now();
    match command {
        Command::Payoff { dist, a, b } => {
            let dist = read_distribution(&dist)?;
            let a = vertex_arg(&a, dist.dim())?;
            let b = vertex_arg(&b, dist.dim())?;
            let breakdown = game::voronoi_measures(&dist, a, b);
            let results = json!({
                "d": dist.dim(),
                "a": a.bitstring(dist.dim()),
                "b": b.bitstring(dist.dim()),
                "v_ab": rational_json(&breakdown.v_ab),
                "tie": rational_json(&breakdown.tie),
                "v_ba": rational_json(&breakdown.v_ba),
                "p1": rational_json(&breakdown.p1()),
                "p2": rational_json(&breakdown.p2()),
            });
            emit_report("payoff", Some(distribution_digest(&dist)), started, results);
        }
        Command::BestResponse { dist, b } => {
            let dist = read_distribution(&dist)?;
            let b = vertex_arg(&b, dist.dim())?;
            let br = game::best_responses(&dist, b);
            let results = json!({
                "d": dist.dim(),
                "b": b.bitstring(dist.dim()),
                "value": rational_json(&br.value),
                "argmax": br.argmax.iter().map(|v| v.bitstring(dist.dim())).collect::<Vec<_>>(),
            });
            emit_report("best-response", Some(distribution_digest(&dist)), started, results);
        }
        Command::Equilibria { dist, k_local } => {
            let dist = read_distribution(&dist)?;
            let digest = Some(distribution_digest(&dist));
            if let Some(k) = k_local {
                let report = dist.majority_report();
                let m = report.majority_point.ok_or_else(|| {
                    CliError::input(
                        "k-local verdict needs a majority point; some coordinate is balanced",
                    )
                })?;
                let verdict = game::is_k_local_equilibrium(&dist, m, m, k)?;
                let results = json!({
                    "d": dist.dim(),
                    "k": k,
                    "majority_point": m.bitstring(dist.dim()),
                    "is_k_local_equilibrium": verdict,
                });
                emit_report("equilibria", digest, started, results);
            } else {
                let scan_cap = env_cap("CUBEVOTE_SCAN_CAP", DEFAULT_SCAN_CAP);
                if dist.dim() > scan_cap {
                    return Err(CliError::gated(format!(
                        "equilibrium search gated: dimension {} exceeds scan cap {scan_cap}",
                        dist.dim()
                    )));
                }
                let eq = game::find_equilibria(&dist);
                let pairs: Vec<serde_json::Value> = eq
                    .iter()
                    .map(|(a, b)| {
                        json!([a.bitstring(dist.dim()), b.bitstring(dist.dim())])
                    })
                    .collect();
                let results = json!({
                    "d": dist.dim(),
                    "count": pairs.len(),
                    "pairs": pairs,
                });
                emit_report("equilibria", digest, started, results);
            }
        }
        Command::Majority { dist } => {
            let dist = read_distribution(&dist)?;
            let report = dist.majority_report();
            let classes: Vec<&str> = report
                .classification
                .iter()
                .map(|c| match c {
                    CoordMajority::ZeroMajority => "zero",
                    CoordMajority::OneMajority => "one",
                    CoordMajority::Balanced => "balanced",
                })
                .collect();
            let results = json!({
                "d": dist.dim(),
                "marginals": report.marginals.iter().map(rational_json).collect::<Vec<_>>(),
                "classification": classes,
                "majority_point": report.majority_point.map(|m| m.bitstring(dist.dim())),
                "free_coords": report.free_coords.iter().collect::<Vec<_>>(),
            });
            emit_report("majority", Some(distribution_digest(&dist)), started, results);
        }
        Command::Check {
            dist,
            thm1,
            local,
            rules,
            certify,
        } => {
            let dist = read_distribution(&dist)?;
            let digest = Some(distribution_digest(&dist));
            let (canon, flips) = dist.canonicalize_zero_majority()?;
            let mut results = serde_json::Map::new();
            results.insert(
                "flip_mask".into(),
                json!(flips.bitstring(dist.dim())),
            );
            let run_global = thm1 || (!certify && local.is_none() && rules.is_empty());
            if run_global {
                let v = conditions::check_global_sufficient(&canon)?;
                results.insert("global".into(), verdict_json(&v));
            }
            if let Some(k) = local {
                let v = conditions::check_local_sufficient(&canon, k)?;
                let mut obj = verdict_json(&v);
                obj.as_object_mut()
                    .expect("object")
                    .insert("k".into(), json!(k));
                results.insert("local".into(), obj);
            }
            if !rules.is_empty() && !certify {
                let mut rule_reports = Vec::new();
                for &(t, m) in &rules {
                    let layers = conditions::excluded_layers(&canon, t, m)?;
                    rule_reports.push(json!({
                        "t": t,
                        "m": m,
                        "excluded_layers": layers.iter().collect::<Vec<_>>(),
                    }));
                }
                results.insert("rules".into(), json!(rule_reports));
            }
            if certify {
                let cert = conditions::certify_equilibrium(&canon, &rules)?;
                let layers: serde_json::Map<String, serde_json::Value> = cert
                    .excluded_layers
                    .iter()
                    .map(|(k, j)| {
                        let j = match j {
                            conditions::LayerJustification::Rule { t, m } => {
                                json!({"rule": [t, m]})
                            }
                            conditions::LayerJustification::BruteForce => json!("brute_force"),
                        };
                        (k.to_string(), j)
                    })
                    .collect();
                let verdict = match cert.verdict {
                    conditions::CertificateVerdict::Certified => json!("certified"),
                    conditions::CertificateVerdict::NotCertified { failing_layer } => {
                        json!({"not_certified_at_layer": failing_layer})
                    }
                };
                results.insert(
                    "certificate".into(),
                    json!({"verdict": verdict, "layers": layers}),
                );
            }
            emit_report("check", digest, started, serde_json::Value::Object(results));
        }
        Command::Construct { name, d, eps, out } => {
            let eps = eps.as_deref().map(parse_rational).transpose()?;
            let dist = constructions::construct_by_name(&name, d, eps.as_ref())?;
            let file = distribution_to_file(&dist);
            let text = serde_json::to_string_pretty(&file).expect("serializable file");
            match out {
                Some(path) => {
                    std::fs::write(&path, text.as_bytes()).map_err(|e| {
                        CliError::input(format!("cannot write {}: {e}", path.display()))
                    })?;
                    let results = json!({
                        "name": name,
                        "d": dist.dim(),
                        "out": path.display().to_string(),
                        "digest": distribution_digest(&dist),
                    });
                    emit_report("construct", None, started, results);
                }
                None => {
                    let mut stdout = std::io::stdout().lock();
                    stdout
                        .write_all(text.as_bytes())
                        .and_then(|_| stdout.write_all(b"\n"))
                        .map_err(|e| CliError::input(format!("cannot write output: {e}")))?;
                }
            }
        }
        Command::Mixprod {
            alpha,
            p1,
            p2,
            classify,
            sweep,
            a_seq,
        } => {
            let params = MixParams::new(
                parse_rational(&alpha)?,
                parse_rational(&p1)?,
                parse_rational(&p2)?,
            )?;
            let chosen = [classify.is_some(), sweep.is_some(), a_seq.is_some()]
                .iter()
                .filter(|x| **x)
                .count();
            if chosen != 1 {
                return Err(CliError::input(
                    "pass exactly one of --classify D, --sweep DMAX, --a-seq D",
                ));
            }
            if let Some(d) = classify {
                if d < 1 {
                    return Err(CliError::input("--classify needs a dimension of at least 1"));
                }
                let c = mixprod::classify(&params, d)?;
                let results = json!({
                    "d": d,
                    "marginal_zero": rational_json(&params.marginal_zero()),
                    "verdict": verdict_name(c.verdict),
                    "argmax_k": c.argmax_k,
                    "tie_at_half": c.tie_at_half,
                    "shape": shape_name(c.shape),
                    "layer_payoffs": c.layer_payoffs.iter().map(rational_json).collect::<Vec<_>>(),
                    "asymptotic_antipodal": mixprod::asymptotic_antipodal(&params),
                });
                emit_report("mixprod", None, started, results);
            } else if let Some(dmax) = sweep {
                let mut out = String::from("d,a_d,a_d_approx,best_response\n");
                for d in 0..=dmax {
                    let a = mixprod::layer_payoff(&params, d);
                    let best = match a.cmp(&half_rational()) {
                        std::cmp::Ordering::Greater => "antipode",
                        std::cmp::Ordering::Equal => "tie",
                        std::cmp::Ordering::Less => "majority",
                    };
                    out.push_str(&format!(
                        "{d},{},{},{best}\n",
                        cubevote::io::format_rational(&a),
                        approx_decimal(&a),
                    ));
                }
                print!("{out}");
            } else if let Some(d) = a_seq {
                let seq: Vec<_> = (0..=d)
                    .map(|k| rational_json(&mixprod::layer_payoff(&params, k)))
                    .collect();
                emit_report("mixprod", None, started, json!({"d": d, "a": seq}));
            }
        }
        Command::Dynamics {
            dist,
            init,
            rule,
            max_steps,
            format,
        } => {
            let dist = read_distribution(&dist)?;
            let (a, b) = init
                .split_once(',')
                .ok_or_else(|| CliError::input("expected --init \"V1,V2\""))?;
            let initial = GameState::new(
                vertex_arg(a.trim(), dist.dim())?,
                vertex_arg(b.trim(), dist.dim())?,
                Player::One,
            );
            let rule = match rule {
                RuleArg::Global => MovingRule::GlobalBest,
                RuleArg::Nearest => MovingRule::NearestImproving,
            };
            let traj = dynamics::run(&dist, initial, rule, max_steps)?;
            match format {
                FormatArg::Json => {
                    emit_report(
                        "dynamics",
                        Some(distribution_digest(&dist)),
                        started,
                        trajectory_json(&dist, &traj),
                    );
                }
                FormatArg::Csv => print!("{}", trajectory_csv(&dist, &traj)),
            }
        }
    }
    Ok(())
}

fn half_rational() -> Rational {
    cubevote::rat(1, 2)
}

fn verdict_json(v: &conditions::ConditionVerdict<Rational>) -> serde_json::Value {
    json!({
        "holds": v.holds,
        "threshold": rational_json(&v.threshold),
        "slack": v.per_coordinate_slack.iter().map(rational_json).collect::<Vec<_>>(),
    })
}

fn verdict_name(v: MixVerdict) -> &'static str {
    match v {
        MixVerdict::EquilibriumAtMajority => "equilibrium_at_majority",
        MixVerdict::AntipodalBestResponse => "antipodal_best_response",
    }
}

fn shape_name(s: SequenceShape) -> &'static str {
    match s {
        SequenceShape::MonotoneDecreasing => "monotone_decreasing",
        SequenceShape::DecreasingThenIncreasing => "decreasing_then_increasing",
    }
}
