//! Linear programs for games in which one player has no choices.
//!
//! Without min choices the value vector is the least `v` with `v >= 0`,
//! `v(i) >= v(child)` at max vertices and `v(i) >= (v(j) + v(k)) / 2` at
//! average vertices, so it minimizes `Σ v`. Without max choices it is the
//! greatest `v <= 1` with the mirrored `<=` constraints, once every vertex
//! from which min can avoid the 1-sink forever is pinned to 0.

mod simplex;

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};

pub use simplex::{simplex_solve, LpSolution};

use crate::error::{Error, Result};
use crate::game::{Game, Player, VertexKind};
use crate::markov::ReducedGame;
use crate::rational::{half, Rational};
use crate::vector::RationalVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "=",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    /// One coefficient per variable.
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// An LP over nonnegative rational variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    pub variables: Vec<String>,
    pub objective: Vec<Rational>,
    pub direction: Direction,
    pub constraints: Vec<Constraint>,
}

impl LinearProgram {
    fn for_game(n: usize, direction: Direction) -> Self {
        LinearProgram {
            variables: (1..=n).map(|v| format!("v{v}")).collect(),
            objective: vec![Rational::one(); n],
            direction,
            constraints: Vec::new(),
        }
    }

    /// Adds `Σ coeff·v(var) relation rhs` with 1-based variable ids.
    fn push(&mut self, terms: &[(usize, Rational)], relation: Relation, rhs: Rational) {
        let mut coeffs = vec![Rational::zero(); self.variables.len()];
        for (v, c) in terms {
            coeffs[v - 1] += c;
        }
        self.constraints.push(Constraint { coeffs, relation, rhs });
    }

    pub fn check(&self) -> Result<()> {
        let nv = self.variables.len();
        if self.objective.len() != nv {
            return Err(Error::DimensionMismatch { what: "objective", expected: nv, got: self.objective.len() });
        }
        for c in &self.constraints {
            if c.coeffs.len() != nv {
                return Err(Error::DimensionMismatch { what: "constraint", expected: nv, got: c.coeffs.len() });
            }
        }
        Ok(())
    }
}

fn write_linear(f: &mut fmt::Formatter<'_>, names: &[String], coeffs: &[Rational]) -> fmt::Result {
    let mut first = true;
    for (name, c) in names.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        let (sign, mag) = if c < &Rational::zero() { ("-", -c.clone()) } else { ("+", c.clone()) };
        match (first, sign) {
            (true, "-") => f.write_str("-")?,
            (true, _) => {}
            (false, s) => write!(f, " {s} ")?,
        }
        if mag.is_one() {
            write!(f, "{name}")?;
        } else {
            write!(f, "{mag} {name}")?;
        }
        first = false;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for LinearProgram {
    /// Plain text dump: the objective, then one constraint per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.direction {
            Direction::Minimize => "minimize ",
            Direction::Maximize => "maximize ",
        })?;
        write_linear(f, &self.variables, &self.objective)?;
        writeln!(f)?;
        for c in &self.constraints {
            write_linear(f, &self.variables, &c.coeffs)?;
            writeln!(f, " {} {}", c.relation, c.rhs)?;
        }
        Ok(())
    }
}

fn sink_equalities(lp: &mut LinearProgram, game: &Game) {
    lp.push(&[(game.sink0(), Rational::one())], Relation::Eq, Rational::zero());
    lp.push(&[(game.sink1(), Rational::one())], Relation::Eq, Rational::one());
}

/// `v(i) rel avg(children)` for an average vertex, `v(i) rel v(c)` per outgoing edge otherwise.
fn local_constraints(lp: &mut LinearProgram, rg: &ReducedGame, v: usize, relation: Relation) {
    let one = Rational::one();
    let succ = rg.successors(v);
    if rg.game().kind(v) == VertexKind::Avg {
        let terms = [(v, one), (succ[0], -half()), (succ[1], -half())];
        lp.push(&terms, relation, Rational::zero());
    } else {
        for &c in succ {
            lp.push(&[(v, one.clone()), (c, -one.clone())], relation, Rational::zero());
        }
    }
}

fn require_absent(rg: &ReducedGame, player: Player) -> Result<()> {
    if rg.has_free(player) {
        return Err(Error::Precondition(format!("game has free {player} vertices")));
    }
    Ok(())
}

/// `min Σv` subject to the `>=` constraints; for games without min choices.
pub fn build_lp_min_free_reduced(rg: &ReducedGame) -> Result<LinearProgram> {
    require_absent(rg, Player::Min)?;
    let game = rg.game();
    let mut lp = LinearProgram::for_game(game.n(), Direction::Minimize);
    sink_equalities(&mut lp, game);
    for v in game.vertices() {
        lp.push(&[(v, Rational::one())], Relation::Ge, Rational::zero());
    }
    for v in game.non_sinks() {
        local_constraints(&mut lp, rg, v, Relation::Ge);
    }
    Ok(lp)
}

pub fn build_lp_min_free(game: &Game) -> Result<LinearProgram> {
    build_lp_min_free_reduced(&ReducedGame::full(game))
}

/// Greatest set `Z` without the 1-sink where free min vertices have a child in `Z`
/// and every other non-sink has all its successors in `Z`.
pub fn zero_value_set_reduced(rg: &ReducedGame) -> Result<BTreeSet<usize>> {
    require_absent(rg, Player::Max)?;
    let game = rg.game();
    let mut in_z = vec![true; game.n() + 1];
    in_z[game.sink1()] = false;
    loop {
        let mut changed = false;
        for v in game.non_sinks() {
            if !in_z[v] {
                continue;
            }
            let succ = rg.successors(v);
            let stays = if rg.is_free(v) { succ.iter().any(|&c| in_z[c]) } else { succ.iter().all(|&c| in_z[c]) };
            if !stays {
                in_z[v] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Ok(game.vertices().filter(|&v| in_z[v]).collect())
}

pub fn zero_value_set(game: &Game) -> Result<BTreeSet<usize>> {
    zero_value_set_reduced(&ReducedGame::full(game))
}

/// `max Σv` subject to `v <= 1` and the `<=` constraints, with the zero-value set pinned to 0.
pub fn build_lp_max_free_reduced(rg: &ReducedGame) -> Result<LinearProgram> {
    let zero = zero_value_set_reduced(rg)?;
    let game = rg.game();
    let mut lp = LinearProgram::for_game(game.n(), Direction::Maximize);
    sink_equalities(&mut lp, game);
    for v in game.non_sinks() {
        if zero.contains(&v) {
            lp.push(&[(v, Rational::one())], Relation::Eq, Rational::zero());
            continue;
        }
        lp.push(&[(v, Rational::one())], Relation::Le, Rational::one());
        local_constraints(&mut lp, rg, v, Relation::Le);
    }
    Ok(lp)
}

pub fn build_lp_max_free(game: &Game) -> Result<LinearProgram> {
    build_lp_max_free_reduced(&ReducedGame::full(game))
}

/// Solves a builder LP and packages the optimum as a value vector.
pub fn solve_game_lp(lp: &LinearProgram) -> Result<(RationalVector, usize)> {
    lp.check()?;
    let sol = simplex_solve(lp)?;
    Ok((RationalVector::new(sol.values), sol.pivots))
}

/// Exact optimal values of a reduced game in which at most one player still has choices.
pub fn solve_one_player(rg: &ReducedGame) -> Result<(RationalVector, usize)> {
    let lp = if rg.has_free(Player::Min) {
        build_lp_max_free_reduced(rg)?
    } else {
        build_lp_min_free_reduced(rg)?
    };
    solve_game_lp(&lp)
}
