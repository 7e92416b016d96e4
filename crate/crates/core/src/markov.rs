//! Reduced games and their exact value vectors.
//!
//! With both strategies fixed, a game is a Markov chain and its value vector
//! solves `(I - Q) v = b`, where row `i` of `Q` holds `1` for the single edge of a
//! player vertex, `1/2` per child of an average vertex, and is zero for every
//! vertex that cannot reach a sink; `b` is the indicator of the 1-sink.

use std::collections::{BTreeSet, VecDeque};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::game::{Game, Player, VertexKind};
use crate::linalg::SparseSystem;
use crate::rational::{half, pow4, Rational};
use crate::strategy::Strategy;
use crate::vector::RationalVector;

/// A game with zero, one or both players' choices fixed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedGame<'g> {
    game: &'g Game,
    tau: Option<Strategy>,
    sigma: Option<Strategy>,
}

impl<'g> ReducedGame<'g> {
    /// The game with no choice fixed.
    pub fn full(game: &'g Game) -> Self {
        ReducedGame { game, tau: None, sigma: None }
    }

    pub fn game(&self) -> &'g Game {
        self.game
    }

    pub fn tau(&self) -> Option<&Strategy> {
        self.tau.as_ref()
    }

    pub fn sigma(&self) -> Option<&Strategy> {
        self.sigma.as_ref()
    }

    fn strategy_for(&self, player: Player) -> Option<&Strategy> {
        match player {
            Player::Min => self.tau.as_ref(),
            Player::Max => self.sigma.as_ref(),
        }
    }

    /// Outgoing edges of `v` in the reduced edge set.
    pub fn successors(&self, v: usize) -> &'g [usize] {
        let children = self.game.children(v);
        match self.game.kind(v).owner().and_then(|p| self.strategy_for(p)) {
            Some(s) => {
                let pick = s.pick(v).expect("strategy checked against game");
                let idx = if children[0] == pick { 0 } else { 1 };
                &children[idx..idx + 1]
            }
            None => children,
        }
    }

    /// True for player vertices whose owner is not fixed.
    pub fn is_free(&self, v: usize) -> bool {
        match self.game.kind(v).owner() {
            Some(p) => self.strategy_for(p).is_none(),
            None => false,
        }
    }

    /// A player is "present" if it still has a vertex with two outgoing edges.
    pub fn has_free(&self, player: Player) -> bool {
        self.strategy_for(player).is_none() && self.game.owned_by(player).next().is_some()
    }

    pub fn is_fully_reduced(&self) -> bool {
        !self.has_free(Player::Min) && !self.has_free(Player::Max)
    }

    /// Reduced edges in vertex order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.game.non_sinks().flat_map(move |v| self.successors(v).iter().map(move |&c| (v, c)))
    }

    fn predecessors(&self) -> Vec<Vec<usize>> {
        let mut pred = vec![Vec::new(); self.game.n() + 1];
        for (i, j) in self.edges() {
            pred[j].push(i);
        }
        pred
    }
}

/// Fixes the given strategies. `tau` must be a Min strategy and `sigma` a Max strategy of `game`.
pub fn reduce<'g>(game: &'g Game, tau: Option<&Strategy>, sigma: Option<&Strategy>) -> Result<ReducedGame<'g>> {
    for (s, owner) in [(tau, Player::Min), (sigma, Player::Max)] {
        if let Some(s) = s {
            if s.owner() != owner {
                return Err(Error::StrategyMismatch(format!("expected a {owner} strategy, got a {} strategy", s.owner())));
            }
            s.check(game)?;
        }
    }
    Ok(ReducedGame { game, tau: tau.cloned(), sigma: sigma.cloned() })
}

/// Non-sink vertices with a directed path to either sink, by backward search.
pub fn sink_reachable_set(rg: &ReducedGame) -> BTreeSet<usize> {
    let game = rg.game();
    let pred = rg.predecessors();
    let mut seen = vec![false; game.n() + 1];
    let mut queue: VecDeque<usize> = [game.sink0(), game.sink1()].into();
    seen[game.sink0()] = true;
    seen[game.sink1()] = true;
    while let Some(v) = queue.pop_front() {
        for &p in &pred[v] {
            if !seen[p] {
                seen[p] = true;
                queue.push_back(p);
            }
        }
    }
    game.non_sinks().filter(|&v| seen[v]).collect()
}

/// Sparse `Q`, the 1-sink indicator `b`, and the set `t` of sink-reaching non-sinks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem {
    n: usize,
    q_rows: Vec<Vec<(usize, Rational)>>,
    t_set: BTreeSet<usize>,
}

impl LinearSystem {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry `Q[i][j]` (1-based).
    pub fn q(&self, i: usize, j: usize) -> Rational {
        self.q_rows[i - 1].iter().filter(|(c, _)| *c == j).map(|(_, v)| v.clone()).sum()
    }

    /// Nonzero entries of row `i`.
    pub fn row(&self, i: usize) -> &[(usize, Rational)] {
        &self.q_rows[i - 1]
    }

    pub fn b(&self, i: usize) -> Rational {
        if i == self.n {
            Rational::one()
        } else {
            Rational::zero()
        }
    }

    pub fn t_set(&self) -> &BTreeSet<usize> {
        &self.t_set
    }

    /// `v = Q v + b`, exactly.
    pub fn residual_holds(&self, v: &RationalVector) -> bool {
        v.len() == self.n
            && (1..=self.n).all(|i| {
                let qv: Rational = self.row(i).iter().map(|(j, q)| q * &v[*j]).sum();
                v[i] == qv + self.b(i)
            })
    }
}

/// Builds `Q`, `b` and `t` for a fully reduced game.
pub fn build_linear_system(rg: &ReducedGame) -> Result<LinearSystem> {
    ensure_fully_reduced(rg)?;
    let game = rg.game();
    let t_set = sink_reachable_set(rg);
    let mut q_rows = vec![Vec::new(); game.n()];
    for &i in &t_set {
        let succ = rg.successors(i);
        let weight = if succ.len() == 1 { Rational::one() } else { half() };
        let row: &mut Vec<(usize, Rational)> = &mut q_rows[i - 1];
        for &j in succ {
            match row.iter_mut().find(|(c, _)| *c == j) {
                Some((_, w)) => *w += &weight,
                None => row.push((j, weight.clone())),
            }
        }
    }
    Ok(LinearSystem { n: game.n(), q_rows, t_set })
}

fn ensure_fully_reduced(rg: &ReducedGame) -> Result<()> {
    if rg.has_free(Player::Min) {
        return Err(Error::NotFullyReduced("min"));
    }
    if rg.has_free(Player::Max) {
        return Err(Error::NotFullyReduced("max"));
    }
    Ok(())
}

/// Solves `(I - Q) v = b` exactly. Vertices outside `t` are fixed to 0 and left out of the elimination.
pub fn solve_linear_system(system: &LinearSystem) -> Result<RationalVector> {
    let n = system.n;
    let unknowns: Vec<usize> = system.t_set.iter().copied().collect();
    let mut local = vec![usize::MAX; n + 1];
    for (k, &v) in unknowns.iter().enumerate() {
        local[v] = k;
    }
    let mut sparse = SparseSystem::new(unknowns.len());
    for (k, &i) in unknowns.iter().enumerate() {
        sparse.add(k, k, Rational::one());
        for (j, q) in system.row(i) {
            if local[*j] != usize::MAX {
                sparse.add(k, local[*j], -q.clone());
            } else if *j == n {
                sparse.add_rhs(k, q.clone());
            }
        }
    }
    let solution = sparse.solve()?;
    let mut v = RationalVector::zeros(n);
    v[n] = Rational::one();
    for (k, x) in solution.into_iter().enumerate() {
        v[unknowns[k]] = x;
    }
    Ok(v)
}

/// Exact value vector of a fully reduced game.
pub fn solve_value_vector(rg: &ReducedGame) -> Result<RationalVector> {
    solve_linear_system(&build_linear_system(rg)?)
}

/// Whether `x = p/q` (lowest terms) satisfies `0 <= p <= q <= 4^t`.
pub fn in_omega(x: &Rational, t: usize) -> bool {
    !x.is_negative() && x.numer() <= x.denom() && x.denom() <= &pow4(t as u64)
}

/// True iff under every strategy pair every vertex has a path to a sink.
///
/// Grows the set of vertices from which a sink is reachable whatever the
/// players do: an average vertex joins once one child is in the set, a player
/// vertex once both are.
pub fn is_stopping(game: &Game) -> bool {
    let n = game.n();
    let mut in_set = vec![false; n + 1];
    in_set[game.sink0()] = true;
    in_set[game.sink1()] = true;
    let mut size = 2;
    loop {
        let before = size;
        for v in game.non_sinks() {
            if in_set[v] {
                continue;
            }
            let inside = game.children(v).iter().filter(|&&c| in_set[c]).count();
            let joins = match game.kind(v) {
                VertexKind::Avg => inside >= 1,
                _ => inside == 2,
            };
            if joins {
                in_set[v] = true;
                size += 1;
            }
        }
        if size == before {
            return size == n;
        }
    }
}
