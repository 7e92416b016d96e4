//! Exhaustive saddle-point search over all pure memoryless strategy pairs.

use crate::error::{Error, Result};
use crate::game::{Game, Player};
use crate::markov::{reduce, solve_value_vector};
use crate::strategy::Strategy;
use crate::vector::RationalVector;

/// Default limit on `|V_min| + |V_max|`.
pub const DEFAULT_ORACLE_BUDGET: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleOutcome {
    pub values: RationalVector,
    pub tau: Strategy,
    pub sigma: Strategy,
    /// Strategy pairs solved.
    pub pairs: usize,
}

pub fn brute_force_oracle(game: &Game) -> Result<OracleOutcome> {
    brute_force_oracle_with_budget(game, DEFAULT_ORACLE_BUDGET)
}

/// Solves every `G_{τ,σ}` exactly and returns the first pair, in
/// lexicographic `(τ, σ)` enumeration order, where no unilateral deviation
/// improves any component for the deviating player.
pub fn brute_force_oracle_with_budget(game: &Game, budget: usize) -> Result<OracleOutcome> {
    let bits = game.owned_by(Player::Min).count() + game.owned_by(Player::Max).count();
    if bits > budget {
        return Err(Error::BudgetExceeded { bits, budget });
    }
    let taus: Vec<Strategy> = Strategy::enumerate(game, Player::Min).collect();
    let sigmas: Vec<Strategy> = Strategy::enumerate(game, Player::Max).collect();
    let mut table: Vec<Vec<RationalVector>> = Vec::with_capacity(taus.len());
    for tau in &taus {
        let row = sigmas
            .iter()
            .map(|sigma| solve_value_vector(&reduce(game, Some(tau), Some(sigma))?))
            .collect::<Result<Vec<_>>>()?;
        table.push(row);
    }
    let pairs = taus.len() * sigmas.len();
    for (t, row) in table.iter().enumerate() {
        for (s, v) in row.iter().enumerate() {
            let max_cannot_improve = row.iter().all(|w| w.le_componentwise(v));
            let min_cannot_improve = table.iter().all(|other| v.le_componentwise(&other[s]));
            if max_cannot_improve && min_cannot_improve {
                return Ok(OracleOutcome {
                    values: v.clone(),
                    tau: taus[t].clone(),
                    sigma: sigmas[s].clone(),
                    pairs,
                });
            }
        }
    }
    Err(Error::Verification("no saddle point among pure memoryless strategy pairs".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::rational::{int, ratio};

    #[test]
    fn examples() {
        let e = brute_force_oracle(&game_e()).unwrap();
        assert_eq!(e.values, RationalVector::new(vec![int(0), int(0), int(0), int(1)]));
        assert_eq!(e.pairs, 4);
        let g = brute_force_oracle(&game_g()).unwrap();
        assert_eq!(g.values, RationalVector::new(vec![ratio(3, 4), ratio(1, 2), ratio(3, 4), int(0), int(1)]));
        assert_eq!(g.pairs, 2);
        let a = brute_force_oracle(&game_a()).unwrap();
        assert_eq!(a.values, RationalVector::new(vec![ratio(1, 2), int(0), int(1)]));
        assert_eq!(a.pairs, 1);
    }

    #[test]
    fn budget() {
        assert!(matches!(
            brute_force_oracle_with_budget(&game_e(), 1),
            Err(Error::BudgetExceeded { bits: 2, budget: 1 })
        ));
    }
}
