//! Alternating best-response dynamics with deterministic moving rules,
//! equilibrium detection, and exact cycle detection.

use std::collections::HashMap;

use crate::cube::{hamming, Vertex};
use crate::error::Error;
use crate::game::{best_responses, payoff};
use crate::measure::Distribution;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Player {
    One,
    Two,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::One => Player::Two,
            Player::Two => Player::One,
        }
    }
}

/// A position pair together with whose turn it is to move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GameState {
    pub pos1: Vertex,
    pub pos2: Vertex,
    pub mover: Player,
}

impl GameState {
    pub fn new(pos1: Vertex, pos2: Vertex, mover: Player) -> Self {
        GameState { pos1, pos2, mover }
    }
}

/// How the moving player picks their next position. Both rules break ties by
/// the lexicographically smallest vertex index, so a step is a deterministic
/// function of the distribution and the state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MovingRule {
    /// Move to a payoff-maximizing response; stay put when the current
    /// position already attains the maximum.
    GlobalBest,
    /// Move to a strictly improving vertex at the minimum Hamming distance;
    /// stay put when no strictly improving vertex exists at any distance.
    NearestImproving,
}

/// How a run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    /// Both players stayed in consecutive turns; the final position pair is
    /// an equilibrium.
    ReachedEquilibrium,
    /// A previously visited state recurred after at least one actual move.
    /// `entry_index` is the index of the first visit in `states` and
    /// `period` the cycle length in steps.
    Cycle { entry_index: usize, period: usize },
    Truncated { max_steps: usize },
}

/// A complete run: every visited state (starting with the initial one) and
/// the outcome classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trajectory {
    pub states: Vec<GameState>,
    pub outcome: Outcome,
}

impl Trajectory {
    pub fn final_state(&self) -> &GameState {
        self.states.last().expect("at least the initial state")
    }
}

/// Apply one turn: the mover's position is replaced according to the rule
/// and the turn passes to the other player.
pub fn step<S: Scalar>(dist: &Distribution<S>, state: &GameState, rule: MovingRule) -> GameState {
    let (own, opp) = match state.mover {
        Player::One => (state.pos1, state.pos2),
        Player::Two => (state.pos2, state.pos1),
    };
    let current = payoff(dist, own, opp);
    let next = match rule {
        MovingRule::GlobalBest => {
            let br = best_responses(dist, opp);
            if current == br.value {
                own
            } else {
                *br.argmax.iter().min().expect("argmax nonempty")
            }
        }
        MovingRule::NearestImproving => {
            let mut chosen = own;
            'search: for radius in 1..=dist.dim() as u32 {
                for cand in dist.vertices() {
                    if hamming(cand, own) == radius && payoff(dist, cand, opp) > current {
                        chosen = cand;
                        break 'search;
                    }
                }
            }
            chosen
        }
    };
    match state.mover {
        Player::One => GameState::new(next, state.pos2, Player::Two),
        Player::Two => GameState::new(state.pos1, next, Player::One),
    }
}

/// Iterate [`step`] from `initial` for at most `max_steps` turns.
///
/// Terminates with `ReachedEquilibrium` as soon as both players stay in
/// consecutive turns, and with `Cycle` as soon as a `(pos1, pos2, mover)`
/// triple recurs with a position change in between. A deterministic run over
/// a finite state space must eventually do one or the other, so with a large
/// enough step budget `Truncated` never occurs.
pub fn run<S: Scalar>(
    dist: &Distribution<S>,
    initial: GameState,
    rule: MovingRule,
    max_steps: usize,
) -> Result<Trajectory, Error> {
    if max_steps < 1 {
        return Err(Error::BadStepLimit);
    }
    let mut states = vec![initial];
    let mut seen: HashMap<GameState, usize> = HashMap::from([(initial, 0)]);
    let mut consecutive_stays = 0usize;
    for step_no in 1..=max_steps {
        let current = *states.last().expect("nonempty");
        let next = step(dist, &current, rule);
        let moved = (next.pos1, next.pos2) != (current.pos1, current.pos2);
        consecutive_stays = if moved { 0 } else { consecutive_stays + 1 };
        states.push(next);
        if consecutive_stays >= 2 {
            return Ok(Trajectory {
                states,
                outcome: Outcome::ReachedEquilibrium,
            });
        }
        if let Some(&first) = seen.get(&next) {
            return Ok(Trajectory {
                states,
                outcome: Outcome::Cycle {
                    entry_index: first,
                    period: step_no - first,
                },
            });
        }
        seen.insert(next, step_no);
    }
    Ok(Trajectory {
        states,
        outcome: Outcome::Truncated { max_steps },
    })
}
