//! Exact solvers for simple stochastic games.
//!
//! A game is a directed graph whose non-sink vertices belong to Max, Min or a
//! fair coin, with a 0-sink and a 1-sink. Everything here works in exact
//! rational arithmetic: value vectors of fixed strategy pairs, one-player LPs,
//! the attractor solver for coin-free games, Hoffman–Karp strategy
//! improvement, value iteration, the stopping transform and the certificate
//! checks built on it.
//!
//! ```
//! use ssg_core::{parse_game, solve, Method, format_rational};
//!
//! let game = parse_game("ssg 4 1\n1 avg 2 4\n2 avg 1 3\n").unwrap();
//! let report = solve(&game, Method::Auto).unwrap();
//! assert_eq!(format_rational(report.value(&game)), "2/3");
//! ```

pub mod error;
pub mod fixtures;
pub mod game;
pub mod generate;
mod linalg;
pub mod lp;
pub mod markov;
pub mod rational;
pub mod solvers;
pub mod strategy;
pub mod transform;
pub mod vector;

pub use error::{Error, Result};
pub use game::{parse_game, Game, GameFileError, Player, RawGame, ValidationError, VertexKind};
pub use generate::{generate_random_game, KindWeights};
pub use lp::{build_lp_max_free, build_lp_min_free, simplex_solve, zero_value_set, LinearProgram};
pub use markov::{
    build_linear_system, in_omega, is_stopping, reduce, sink_reachable_set, solve_value_vector, LinearSystem,
    ReducedGame,
};
pub use rational::{format_decimal, format_rational, parse_rational, Rational};
pub use solvers::*;
pub use strategy::{parse_edge_list, Strategy};
pub use transform::{beta_stopping, verify_transform_bound, StoppingTransform, TransformBound, DEFAULT_STOPPING_EXPONENT};
pub use vector::RationalVector;
