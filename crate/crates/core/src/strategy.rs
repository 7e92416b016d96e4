//! Pure memoryless strategies: one chosen child per owned vertex.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::game::{Game, Player};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Strategy {
    owner: Player,
    picks: BTreeMap<usize, usize>,
}

impl Strategy {
    /// Checked constructor: exactly one pick per vertex of `owner`, each a true child.
    pub fn new(game: &Game, owner: Player, picks: BTreeMap<usize, usize>) -> Result<Strategy> {
        let s = Strategy { owner, picks };
        s.check(game)?;
        Ok(s)
    }

    pub fn from_edges(game: &Game, owner: Player, edges: &[(usize, usize)]) -> Result<Strategy> {
        let mut picks = BTreeMap::new();
        for &(i, j) in edges {
            if picks.insert(i, j).is_some() {
                return Err(Error::StrategyMismatch(format!("vertex {i} picked twice")));
            }
        }
        Strategy::new(game, owner, picks)
    }

    /// Every owned vertex takes its left child.
    pub fn leftmost(game: &Game, owner: Player) -> Strategy {
        Strategy::from_bits(game, owner, 0)
    }

    /// Bit `k` of `bits` selects the right child of the `k`-th owned vertex (ascending id).
    pub fn from_bits(game: &Game, owner: Player, bits: u64) -> Strategy {
        let picks = game
            .owned_by(owner)
            .enumerate()
            .map(|(k, v)| (v, game.children(v)[((bits >> k) & 1) as usize]))
            .collect();
        Strategy { owner, picks }
    }

    /// All strategies of `owner` in lexicographic bit order. Panics above 63 owned vertices.
    pub fn enumerate(game: &Game, owner: Player) -> impl Iterator<Item = Strategy> + '_ {
        let count = game.owned_by(owner).count();
        assert!(count < 64, "too many {owner} vertices to enumerate");
        (0..1u64 << count).map(move |bits| Strategy::from_bits(game, owner, bits))
    }

    pub fn check(&self, game: &Game) -> Result<()> {
        for (&v, &c) in &self.picks {
            if v < 1 || v > game.n() || game.kind(v).owner() != Some(self.owner) {
                return Err(Error::StrategyMismatch(format!("vertex {v} is not a {} vertex", self.owner)));
            }
            if !game.children(v).contains(&c) {
                return Err(Error::StrategyMismatch(format!("{c} is not a child of vertex {v}")));
            }
        }
        if let Some(v) = game.owned_by(self.owner).find(|v| !self.picks.contains_key(v)) {
            return Err(Error::StrategyMismatch(format!("no pick for {} vertex {v}", self.owner)));
        }
        Ok(())
    }

    pub fn owner(&self) -> Player {
        self.owner
    }

    pub fn pick(&self, v: usize) -> Option<usize> {
        self.picks.get(&v).copied()
    }

    pub fn picks(&self) -> &BTreeMap<usize, usize> {
        &self.picks
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.picks.iter().map(|(&i, &j)| (i, j))
    }

    pub fn len(&self) -> usize {
        self.picks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.picks.is_empty()
    }

    /// Copy with vertex `v` switched to `child`. The caller keeps the result valid.
    pub(crate) fn with_pick(&self, v: usize, child: usize) -> Strategy {
        let mut picks = self.picks.clone();
        picks.insert(v, child);
        Strategy { owner: self.owner, picks }
    }

    pub(crate) fn from_picks_unchecked(owner: Player, picks: BTreeMap<usize, usize>) -> Strategy {
        Strategy { owner, picks }
    }
}

impl fmt::Display for Strategy {
    /// Comma-separated `i->j` pairs.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (i, j)) in self.edges().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}->{j}")?;
        }
        Ok(())
    }
}

/// Parses `1->2,3->1`. An empty string or `-` is the empty list.
pub fn parse_edge_list(s: &str) -> Result<Vec<(usize, usize)>, String> {
    let s = s.trim();
    if s.is_empty() || s == "-" {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|pair| {
            let (i, j) = pair.split_once("->").ok_or_else(|| format!("expected `i->j`, found `{pair}`"))?;
            let i = i.trim().parse().map_err(|_| format!("bad vertex `{i}`"))?;
            let j = j.trim().parse().map_err(|_| format!("bad vertex `{j}`"))?;
            Ok((i, j))
        })
        .collect()
}
