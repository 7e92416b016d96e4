//! The β-stopping game: every edge `(i, j)` becomes a chain of `m = c·n`
//! average vertices, each passing to `j` with probability 1/2 and otherwise
//! to the next chain vertex; the last one falls to the 0-sink instead. One
//! traversal of an edge therefore stops with probability exactly `β = 2^-m`,
//! every play ends in a sink, and values move by at most `2^(n(3-c))`.
//!
//! Numbering of `G'`: original non-sinks keep their ids, chain vertices follow
//! edge by edge (vertex order, left child first, chain order), and the two
//! sinks come last.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::game::{Game, VertexKind};
use crate::markov::{reduce, solve_value_vector};
use crate::rational::{pow2, pow2_signed, Rational};
use crate::strategy::Strategy;
use crate::vector::RationalVector;

pub const DEFAULT_STOPPING_EXPONENT: u32 = 9;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StoppingTransform {
    c: u32,
    chain_len: usize,
    original_n: usize,
    transformed_n: usize,
    /// `vertex_map[v - 1]` is the id of original vertex `v` in `G'`.
    vertex_map: Vec<usize>,
    edge_chains: BTreeMap<(usize, usize), Vec<usize>>,
}

impl StoppingTransform {
    pub fn c(&self) -> u32 {
        self.c
    }

    /// `m = c·n`.
    pub fn chain_len(&self) -> usize {
        self.chain_len
    }

    pub fn beta(&self) -> Rational {
        Rational::new(1.into(), pow2(self.chain_len as u64))
    }

    pub fn original_n(&self) -> usize {
        self.original_n
    }

    pub fn transformed_n(&self) -> usize {
        self.transformed_n
    }

    /// Id in `G'` of original vertex `v`.
    pub fn map(&self, v: usize) -> usize {
        self.vertex_map[v - 1]
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_map
    }

    /// Chain vertices replacing edge `(i, j)`, first to last.
    pub fn chain(&self, i: usize, j: usize) -> Option<&[usize]> {
        self.edge_chains.get(&(i, j)).map(Vec::as_slice)
    }

    pub fn edge_chains(&self) -> &BTreeMap<(usize, usize), Vec<usize>> {
        &self.edge_chains
    }

    /// The strategy of `G'` that keeps every pick of `s`.
    pub fn lift(&self, s: &Strategy) -> Strategy {
        let picks = s.edges().map(|(i, j)| (self.map(i), self.edge_chains[&(i, j)][0])).collect();
        Strategy::from_picks_unchecked(s.owner(), picks)
    }

    /// Inverse of [`lift`](Self::lift) for strategies of `G'`.
    pub fn project(&self, s: &Strategy) -> Strategy {
        let first_to_edge: BTreeMap<usize, (usize, usize)> =
            self.edge_chains.iter().map(|(&e, chain)| (chain[0], e)).collect();
        let picks = s.edges().map(|(i, a)| (i, first_to_edge[&a].1)).collect();
        Strategy::from_picks_unchecked(s.owner(), picks)
    }

    /// Components of a `G'` vector at the original vertices.
    pub fn restrict(&self, v: &RationalVector) -> RationalVector {
        self.vertex_map.iter().map(|&w| v[w].clone()).collect()
    }
}

/// Builds `G'` for stopping exponent `c >= 1`.
pub fn beta_stopping(game: &Game, c: u32) -> Result<(Game, StoppingTransform)> {
    if c == 0 {
        return Err(Error::Precondition("stopping exponent c must be at least 1".into()));
    }
    let n = game.n();
    let m = c as usize * n;
    let n2 = n + m * game.edge_count();
    let sink0 = n2 - 1;
    let sink1 = n2;
    let mut vertex_map: Vec<usize> = game.non_sinks().collect();
    vertex_map.extend([sink0, sink1]);

    let mut vertices: Vec<(VertexKind, [usize; 2])> = Vec::with_capacity(n2 - 2);
    let mut edge_chains = BTreeMap::new();
    let mut next = n - 1;
    for (i, j) in game.edges() {
        edge_chains.insert((i, j), (next..next + m).collect::<Vec<_>>());
        next += m;
    }
    for v in game.non_sinks() {
        let c = game.children(v);
        vertices.push((game.kind(v), [edge_chains[&(v, c[0])][0], edge_chains[&(v, c[1])][0]]));
    }
    for (i, j) in game.edges() {
        let chain = &edge_chains[&(i, j)];
        let target = vertex_map[j - 1];
        for k in 0..m {
            let fallthrough = if k + 1 < m {
                chain[k + 1]
            } else if target != sink0 {
                sink0
            } else {
                // the chain already ends in the 0-sink: loop back so both children stay distinct
                chain[k - 1]
            };
            vertices.push((VertexKind::Avg, [target, fallthrough]));
        }
    }
    let start = vertex_map[game.start() - 1];
    let transformed = Game::new(n2, start, &vertices).map_err(|e| Error::Verification(format!("transformed game invalid: {e}")))?;
    let transform = StoppingTransform { c, chain_len: m, original_n: n, transformed_n: n2, vertex_map, edge_chains };
    Ok((transformed, transform))
}

/// `2^(n(3-c))`.
pub fn transform_error_bound(n: usize, c: u32) -> Rational {
    pow2_signed(n as i64 * (3 - c as i64))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformBound {
    /// Largest `|v(i) - v'(i)|` over original vertices.
    pub max_gap: Rational,
    pub bound: Rational,
    pub within_bound: bool,
    /// Value vector of `G` under the strategies.
    pub original: RationalVector,
    /// Value vector of `G'` under the lifted strategies, at the original vertices.
    pub transformed: RationalVector,
}

/// Solves `G_{τ,σ}` and `G'_{τ,σ}` exactly and compares them against `2^(n(3-c))`.
pub fn verify_transform_bound(game: &Game, c: u32, tau: &Strategy, sigma: &Strategy) -> Result<TransformBound> {
    let original = solve_value_vector(&reduce(game, Some(tau), Some(sigma))?)?;
    let (g2, tr) = beta_stopping(game, c)?;
    let lifted = solve_value_vector(&reduce(&g2, Some(&tr.lift(tau)), Some(&tr.lift(sigma)))?)?;
    let transformed = tr.restrict(&lifted);
    let max_gap = original.max_abs_diff(&transformed);
    let bound = transform_error_bound(game.n(), c);
    Ok(TransformBound { within_bound: max_gap <= bound, max_gap, bound, original, transformed })
}
