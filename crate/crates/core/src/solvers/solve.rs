//! The exact solver front end.

use std::fmt;
use std::str::FromStr;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::game::{Game, Player, VertexKind};
use crate::lp::solve_one_player;
use crate::markov::{is_stopping, ReducedGame};
use crate::rational::{pow4, Rational};
use crate::strategy::Strategy;
use crate::transform::{beta_stopping, DEFAULT_STOPPING_EXPONENT};
use crate::vector::RationalVector;

use super::avg_free::solve_avg_free_counted;
use super::certificate::Certificate;
use super::hoffman_karp::{hoffman_karp, hoffman_karp_with};
use super::operator::{default_epsilon, is_fixed_point, value_iteration};
use super::oracle::brute_force_oracle;
use super::rounding::{delta, round_to_omega};
use super::strategies::{greedy_strategies, ReplyMethod};

/// Requested solver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Auto,
    Vi,
    Hk,
    Lp,
    AvgFree,
    Oracle,
}

impl Method {
    pub const ALL: [Method; 6] = [Method::Auto, Method::Vi, Method::Hk, Method::Lp, Method::AvgFree, Method::Oracle];

    pub fn name(self) -> &'static str {
        match self {
            Method::Auto => "auto",
            Method::Vi => "vi",
            Method::Hk => "hk",
            Method::Lp => "lp",
            Method::AvgFree => "avg-free",
            Method::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown method '{s}' (expected auto, vi, hk, lp, avg-free or oracle)"))
    }
}

/// The algorithm that actually produced a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    AvgFree,
    Lp,
    HoffmanKarp,
    /// Hoffman–Karp on the stopping transform, rounded back to `Ω_n`.
    Transform,
    ValueIteration,
    Oracle,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::AvgFree => "avg-free",
            Route::Lp => "lp",
            Route::HoffmanKarp => "hk",
            Route::Transform => "hk-transform",
            Route::ValueIteration => "vi",
            Route::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub values: RationalVector,
    pub tau: Strategy,
    pub sigma: Strategy,
    pub method: Route,
    /// Passes, simplex pivots, improvement rounds, sweeps or strategy pairs, depending on `method`.
    pub iterations: usize,
    pub certificate: Option<Certificate>,
}

impl SolveReport {
    pub fn value(&self, game: &Game) -> &Rational {
        &self.values[game.start()]
    }
}

/// Upper bound on value-iteration sweeps inside [`solve`].
pub const VI_MAX_ITERS: usize = 1_000_000;

fn one_player_absent(game: &Game) -> bool {
    game.owned_by(Player::Min).next().is_none() || game.owned_by(Player::Max).next().is_none()
}

fn mismatch(method: Method, reason: &str) -> Error {
    Error::MethodMismatch { method: method.name(), reason: reason.into() }
}

/// Exact optimal values via `G'`: Hoffman–Karp on the `c`-stopping game,
/// rounding of the original components onto `Ω_n`, and a check of both
/// `z = I_G(z)` and `|z - v'| < δ/2`.
pub fn solve_via_transform(game: &Game, c: u32) -> Result<(RationalVector, Certificate, usize)> {
    let n = game.n();
    let (g2, tr) = beta_stopping(game, c)?;
    let hk = hoffman_karp_with(&g2, ReplyMethod::StrategyIteration)?;
    let s = hk.values;
    let z = game.vertices().map(|i| round_to_omega(&s[tr.map(i)], n)).collect::<Result<RationalVector>>()?;
    if !is_fixed_point(game, &z)? {
        return Err(Error::Verification("rounded values are not a fixed point of the game operator".into()));
    }
    let radius = delta(n) / Rational::from_integer(2.into());
    if game.vertices().any(|i| (&z[i] - &s[tr.map(i)]).abs() >= radius) {
        return Err(Error::Verification("rounded values are not within delta/2 of the transformed values".into()));
    }
    Ok((z.clone(), Certificate { n, c, z, s }, hk.rounds))
}

/// Value iteration to `4^(-2n)/4`, rounding onto `Ω_n`, and an exact fixed-point check.
///
/// On a stopping game the fixed point of `I_G` is unique, so a rounded vector
/// that passes the check is exact. If it fails, the tolerance is tightened by
/// another factor `4^n` and iteration resumes.
fn solve_by_value_iteration(game: &Game) -> Result<(RationalVector, usize)> {
    let n = game.n();
    let mut epsilon = default_epsilon(n);
    let mut total = 0;
    for _ in 0..8 {
        let out = value_iteration(game, VI_MAX_ITERS, &epsilon)?;
        total += out.iterations;
        let rounded: Result<RationalVector> = out.values.iter().map(|x| round_to_omega(x, n)).collect();
        if let Ok(z) = rounded {
            if is_fixed_point(game, &z)? {
                return Ok((z, total));
            }
        }
        epsilon /= Rational::from_integer(pow4(n as u64));
    }
    Err(Error::Verification("value iteration did not reach a roundable approximation".into()))
}

/// Computes the optimal value vector with the requested method.
///
/// `Auto` picks the first applicable route: the attractor solver when there
/// are no average vertices, an LP when one player has no vertices,
/// Hoffman–Karp on stopping games, and the stopping transform otherwise.
pub fn solve(game: &Game, method: Method) -> Result<SolveReport> {
    let has_avg = game.has_kind(VertexKind::Avg);
    let stopping = is_stopping(game);
    let route = match method {
        Method::Auto if !has_avg => Route::AvgFree,
        Method::Auto if one_player_absent(game) => Route::Lp,
        Method::Auto | Method::Hk if stopping => Route::HoffmanKarp,
        Method::Auto | Method::Hk => Route::Transform,
        Method::Vi if stopping => Route::ValueIteration,
        Method::Vi => return Err(mismatch(method, "value iteration is only exact on stopping games")),
        Method::Lp if one_player_absent(game) => Route::Lp,
        Method::Lp => return Err(mismatch(method, "both players have vertices")),
        Method::AvgFree if !has_avg => Route::AvgFree,
        Method::AvgFree => return Err(mismatch(method, "game has average vertices")),
        Method::Oracle => Route::Oracle,
    };

    let mut certificate = None;
    let mut saddle = None;
    let (values, iterations) = match route {
        Route::AvgFree => {
            let out = solve_avg_free_counted(game)?;
            (out.values, out.passes)
        }
        Route::Lp => solve_one_player(&ReducedGame::full(game))?,
        Route::HoffmanKarp => {
            let out = hoffman_karp(game)?;
            (out.values, out.rounds)
        }
        Route::Transform => {
            let (z, cert, rounds) = solve_via_transform(game, DEFAULT_STOPPING_EXPONENT)?;
            certificate = Some(cert);
            (z, rounds)
        }
        Route::ValueIteration => solve_by_value_iteration(game)?,
        Route::Oracle => {
            let out = brute_force_oracle(game)?;
            saddle = Some((out.tau, out.sigma));
            (out.values, out.pairs)
        }
    };

    if !is_fixed_point(game, &values)? {
        return Err(Error::Verification(format!("{route} result is not a fixed point of the game operator")));
    }
    let (tau, sigma) = match saddle {
        Some(pair) => pair,
        None => greedy_strategies(game, &values)?,
    };
    Ok(SolveReport { values, tau, sigma, method: route, iterations, certificate })
}
