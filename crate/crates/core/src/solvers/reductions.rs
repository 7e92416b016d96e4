//! Game values and decisions, and the conversions between the three problem forms.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::game::Game;
use crate::markov::{reduce, solve_value_vector};
use crate::rational::{format_rational, Rational};
use crate::vector::RationalVector;

use super::solve::{solve, Method};

/// Value at the start vertex, from optimal strategies: solve, extract
/// greedy strategies, and solve the fully reduced game they induce.
pub fn game_value_via_strategies(game: &Game) -> Result<Rational> {
    let report = solve(game, Method::Auto)?;
    let v = solve_value_vector(&reduce(game, Some(&report.tau), Some(&report.sigma))?)?;
    Ok(v[game.start()].clone())
}

/// Optimal value vector assembled from one game-value query per start vertex.
pub fn ovv_via_game_values(game: &Game) -> Result<RationalVector> {
    game.vertices()
        .map(|i| {
            if i == game.sink0() {
                Ok(Rational::zero())
            } else if i == game.sink1() {
                Ok(Rational::one())
            } else {
                let moved = game.with_start(i)?;
                Ok(solve(&moved, Method::Auto)?.values[i].clone())
            }
        })
        .collect()
}

/// The optimal value of the start vertex. Both the value vector and the
/// induced strategy pair are consulted, and they must agree.
pub fn game_value(game: &Game) -> Result<Rational> {
    let report = solve(game, Method::Auto)?;
    let direct = report.values[game.start()].clone();
    let composed = solve_value_vector(&reduce(game, Some(&report.tau), Some(&report.sigma))?)?[game.start()].clone();
    if direct != composed {
        return Err(Error::Verification(format!(
            "strategy value {} disagrees with optimal value {}",
            format_rational(&composed),
            format_rational(&direct)
        )));
    }
    Ok(direct)
}

/// Whether the game value strictly exceeds `alpha`.
pub fn decide_value(game: &Game, alpha: &Rational) -> Result<bool> {
    if *alpha < Rational::zero() || *alpha > Rational::one() {
        return Err(Error::Precondition(format!("alpha {} outside [0, 1]", format_rational(alpha))));
    }
    Ok(game_value(game)? > *alpha)
}
