//! Hoffman–Karp strategy improvement for the Max player.

use crate::error::{Error, Result};
use crate::game::{Game, Player};
use crate::markov::is_stopping;
use crate::strategy::Strategy;
use crate::vector::RationalVector;

use super::strategies::{best_response_with, ReplyMethod};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HkOutcome {
    pub values: RationalVector,
    pub tau: Strategy,
    pub sigma: Strategy,
    /// Improvement rounds, i.e. rounds in which at least one max vertex switched.
    pub rounds: usize,
    /// Iterations spent inside the Min replies, summed over all rounds.
    pub reply_iterations: usize,
}

/// Strategy improvement with LP best responses. Requires a stopping game.
pub fn hoffman_karp(game: &Game) -> Result<HkOutcome> {
    hoffman_karp_with(game, ReplyMethod::Lp)
}

/// Starts from the all-left Max strategy; each round Min best-responds and
/// every max vertex whose other child has strictly greater value switches.
pub fn hoffman_karp_with(game: &Game, reply: ReplyMethod) -> Result<HkOutcome> {
    if !is_stopping(game) {
        return Err(Error::Precondition("strategy improvement needs a stopping game".into()));
    }
    let mut sigma = Strategy::leftmost(game, Player::Max);
    let mut rounds = 0;
    let mut reply_iterations = 0;
    loop {
        let (tau, values, inner) = best_response_with(game, &sigma, reply)?;
        reply_iterations += inner;
        let mut next = sigma.clone();
        let mut switched = false;
        for (i, current) in sigma.edges() {
            let other = game.children(i).iter().copied().find(|&c| c != current).expect("two children");
            if values[other] > values[current] {
                next = next.with_pick(i, other);
                switched = true;
            }
        }
        if !switched {
            return Ok(HkOutcome { values, tau, sigma, rounds, reply_iterations });
        }
        sigma = next;
        rounds += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::rational::{int, ratio};

    #[test]
    fn examples() {
        let g = game_g();
        let out = hoffman_karp(&g).unwrap();
        assert_eq!(out.values, RationalVector::new(vec![ratio(3, 4), ratio(1, 2), ratio(3, 4), int(0), int(1)]));
        assert_eq!(out.sigma, Strategy::from_edges(&g, Player::Max, &[(1, 3)]).unwrap());
        assert!(out.rounds <= 2);

        let a = hoffman_karp(&game_a()).unwrap();
        assert_eq!(a.rounds, 0);
        assert_eq!(a.values[1], ratio(1, 2));

        let f = game_f();
        let out = hoffman_karp(&f).unwrap();
        assert_eq!(out.values[1], int(1));
        assert_eq!(out.sigma, Strategy::from_edges(&f, Player::Max, &[(1, 3)]).unwrap());

        assert!(hoffman_karp(&game_d()).is_err());
    }

    #[test]
    fn reply_methods_agree() {
        for (_, g) in all().into_iter().filter(|(_, g)| is_stopping(g)) {
            let lp = hoffman_karp_with(&g, ReplyMethod::Lp).unwrap();
            let si = hoffman_karp_with(&g, ReplyMethod::StrategyIteration).unwrap();
            assert_eq!(lp.values, si.values);
        }
    }
}
