//! Strategy extraction from value vectors and one-sided best responses.
//!
//! Min may pick any child of least value. Max must also make progress
//! towards the 1-sink: picking an equally valued child can close a cycle that
//! never reaches a sink. Max picks are therefore ranked by a backward
//! attractor from the 1-sink over value-preserving edges, and a max vertex
//! takes the lowest-id value-preserving child that was attracted before it.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::game::{Game, Player, VertexKind};
use crate::lp::{build_lp_max_free_reduced, build_lp_min_free_reduced, solve_game_lp};
use crate::markov::{reduce, solve_value_vector, ReducedGame};
use crate::strategy::Strategy;
use crate::vector::RationalVector;

/// Lowest-id child with the least (Min) or greatest (Max) value.
fn best_child(children: &[usize], v: &RationalVector, player: Player) -> usize {
    let mut sorted = children.to_vec();
    sorted.sort_unstable();
    let mut best = sorted[0];
    for &c in &sorted[1..] {
        let better = match player {
            Player::Min => v[c] < v[best],
            Player::Max => v[c] > v[best],
        };
        if better {
            best = c;
        }
    }
    best
}

fn greedy_min(rg: &ReducedGame, v: &RationalVector) -> Strategy {
    let game = rg.game();
    let picks = game.owned_by(Player::Min).map(|i| (i, best_child(game.children(i), v, Player::Min))).collect();
    Strategy::from_picks_unchecked(Player::Min, picks)
}

fn greedy_max(rg: &ReducedGame, v: &RationalVector) -> Strategy {
    let game = rg.game();
    let n = game.n();
    let mut attracted = vec![false; n + 1];
    attracted[game.sink1()] = true;
    let mut picks: BTreeMap<usize, usize> = BTreeMap::new();
    loop {
        let mut grew = false;
        for i in game.non_sinks() {
            if attracted[i] || v[i].is_zero() {
                continue;
            }
            let succ = rg.successors(i);
            let joins = match game.kind(i) {
                VertexKind::Avg => succ.iter().any(|&c| attracted[c]),
                VertexKind::Max => {
                    let mut preserving: Vec<usize> =
                        succ.iter().copied().filter(|&c| attracted[c] && v[c] == v[i]).collect();
                    preserving.sort_unstable();
                    if let Some(&c) = preserving.first() {
                        picks.insert(i, c);
                    }
                    !preserving.is_empty()
                }
                _ if !rg.is_free(i) => attracted[succ[0]],
                _ => succ.iter().all(|&c| attracted[c]),
            };
            if joins {
                attracted[i] = true;
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }
    for i in game.owned_by(Player::Max) {
        picks.entry(i).or_insert_with(|| best_child(game.children(i), v, Player::Max));
    }
    Strategy::from_picks_unchecked(Player::Max, picks)
}

/// Greedy strategies with respect to the optimal value vector `v`.
///
/// Min takes the least-valued child, Max the greatest; ties go to the lower
/// id, except that Max at a positive vertex prefers children closer to the
/// 1-sink so that its choices never form a value-0 cycle.
pub fn greedy_strategies(game: &Game, v: &RationalVector) -> Result<(Strategy, Strategy)> {
    if v.len() != game.n() {
        return Err(Error::DimensionMismatch { what: "value vector", expected: game.n(), got: v.len() });
    }
    let rg = ReducedGame::full(game);
    Ok((greedy_min(&rg, v), greedy_max(&rg, v)))
}

/// Whether every player vertex picks a child whose value equals its own.
pub fn is_locally_optimal(game: &Game, v: &RationalVector, tau: &Strategy, sigma: &Strategy) -> bool {
    tau.edges().chain(sigma.edges()).all(|(i, j)| {
        let c = game.children(i);
        let target = match game.kind(i) {
            VertexKind::Min => v[c[0]].clone().min(v[c[1]].clone()),
            _ => v[c[0]].clone().max(v[c[1]].clone()),
        };
        v[j] == target
    })
}

/// How a one-player reduced game is solved inside a best response.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReplyMethod {
    /// The matching exact linear program.
    #[default]
    Lp,
    /// Strategy iteration over exact Markov-chain solves; requires a stopping game.
    StrategyIteration,
}

/// Solves `G_σ` (Min replies) or `G_τ` (Max replies) and extracts the reply greedily.
pub fn best_response(game: &Game, fixed: &Strategy) -> Result<(Strategy, RationalVector)> {
    best_response_with(game, fixed, ReplyMethod::Lp).map(|(s, v, _)| (s, v))
}

/// [`best_response`] with an explicit inner solver; also returns the inner iteration count.
pub fn best_response_with(game: &Game, fixed: &Strategy, method: ReplyMethod) -> Result<(Strategy, RationalVector, usize)> {
    let rg = match fixed.owner() {
        Player::Max => reduce(game, None, Some(fixed))?,
        Player::Min => reduce(game, Some(fixed), None)?,
    };
    let (values, iterations) = match method {
        ReplyMethod::Lp => match fixed.owner() {
            Player::Max => solve_game_lp(&build_lp_max_free_reduced(&rg)?)?,
            Player::Min => solve_game_lp(&build_lp_min_free_reduced(&rg)?)?,
        },
        ReplyMethod::StrategyIteration => strategy_iteration(game, fixed)?,
    };
    let reply = match fixed.owner() {
        Player::Max => greedy_min(&rg, &values),
        Player::Min => greedy_max(&rg, &values),
    };
    Ok((reply, values, iterations))
}

/// Improves the replying player's strategy against `fixed` until no vertex switches.
fn strategy_iteration(game: &Game, fixed: &Strategy) -> Result<(RationalVector, usize)> {
    let player = match fixed.owner() {
        Player::Max => Player::Min,
        Player::Min => Player::Max,
    };
    let mut reply = Strategy::leftmost(game, player);
    let mut rounds = 0;
    loop {
        let values = match player {
            Player::Min => solve_value_vector(&reduce(game, Some(&reply), Some(fixed))?)?,
            Player::Max => solve_value_vector(&reduce(game, Some(fixed), Some(&reply))?)?,
        };
        let mut next = reply.clone();
        let mut switched = false;
        for (i, current) in reply.edges() {
            let other = game.children(i).iter().copied().find(|&c| c != current).expect("two children");
            let better = match player {
                Player::Min => values[other] < values[current],
                Player::Max => values[other] > values[current],
            };
            if better {
                next = next.with_pick(i, other);
                switched = true;
            }
        }
        if !switched {
            return Ok((values, rounds));
        }
        reply = next;
        rounds += 1;
    }
}
