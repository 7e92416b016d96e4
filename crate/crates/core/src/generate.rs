//! Seeded random games.
//!
//! The generator draws from ChaCha8 (`rand_chacha::ChaCha8Rng::seed_from_u64`),
//! so a given `(n, weights, seed, require_stopping)` always yields the same game.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::game::{Game, VertexKind};
use crate::markov::is_stopping;

/// Attempts made before `require_stopping` gives up.
pub const STOPPING_RETRIES: usize = 100_000;

/// Relative frequencies of max, min and avg vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct KindWeights {
    pub max: u32,
    pub min: u32,
    pub avg: u32,
}

impl KindWeights {
    pub const fn new(max: u32, min: u32, avg: u32) -> Self {
        KindWeights { max, min, avg }
    }

    fn total(&self) -> u64 {
        self.max as u64 + self.min as u64 + self.avg as u64
    }

    fn draw(&self, rng: &mut impl Rng) -> VertexKind {
        let r = rng.random_range(0..self.total());
        if r < self.max as u64 {
            VertexKind::Max
        } else if r < (self.max + self.min) as u64 {
            VertexKind::Min
        } else {
            VertexKind::Avg
        }
    }
}

impl fmt::Display for KindWeights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.max, self.min, self.avg)
    }
}

impl FromStr for KindWeights {
    type Err = String;

    /// `max:min:avg`, e.g. `1:1:1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("weights must be `max:min:avg`, found `{s}`"));
        }
        let w: Vec<u32> = parts
            .iter()
            .map(|p| p.trim().parse::<u32>().map_err(|_| format!("bad weight `{p}`")))
            .collect::<Result<_, _>>()?;
        Ok(KindWeights::new(w[0], w[1], w[2]))
    }
}

fn draw_game(n: usize, weights: KindWeights, rng: &mut ChaCha8Rng) -> Game {
    let vertices: Vec<(VertexKind, [usize; 2])> = (0..n - 2)
        .map(|_| {
            let kind = weights.draw(rng);
            // uniform over ordered pairs of distinct ids
            let a = rng.random_range(1..=n);
            let mut b = rng.random_range(1..n);
            if b >= a {
                b += 1;
            }
            (kind, [a, b])
        })
        .collect();
    Game::new(n, 1, &vertices).expect("generated game is valid")
}

/// Random game on `n` vertices with start vertex 1.
pub fn generate_random_game(n: usize, weights: KindWeights, seed: u64, require_stopping: bool) -> Result<Game> {
    if n < 3 {
        return Err(Error::Precondition(format!("n must be at least 3, got {n}")));
    }
    if weights.total() == 0 {
        return Err(Error::Precondition("kind weights are all zero".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if !require_stopping {
        return Ok(draw_game(n, weights, &mut rng));
    }
    for _ in 0..STOPPING_RETRIES {
        let game = draw_game(n, weights, &mut rng);
        if is_stopping(&game) {
            return Ok(game);
        }
    }
    Err(Error::RetryBudget(STOPPING_RETRIES))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_for_fixed_arguments() {
        let w = KindWeights::new(1, 1, 1);
        for seed in 0..20 {
            assert_eq!(generate_random_game(7, w, seed, false).unwrap(), generate_random_game(7, w, seed, false).unwrap());
        }
        assert_ne!(generate_random_game(8, w, 1, false).unwrap(), generate_random_game(8, w, 2, false).unwrap());
    }

    #[test]
    fn only_avg_when_weights_say_so() {
        for seed in 0..10 {
            let g = generate_random_game(3, KindWeights::new(0, 0, 1), seed, false).unwrap();
            assert_eq!(g.kind(1), VertexKind::Avg);
            let c = g.children(1);
            assert_ne!(c[0], c[1]);
        }
    }

    #[test]
    fn stopping_request_is_honoured() {
        let g = generate_random_game(8, KindWeights::new(1, 1, 1), 42, true).unwrap();
        assert!(is_stopping(&g));
    }

    #[test]
    fn bad_arguments() {
        assert!(generate_random_game(2, KindWeights::new(1, 1, 1), 0, false).is_err());
        assert!(generate_random_game(5, KindWeights::new(0, 0, 0), 0, false).is_err());
        // min vertex with children (2, 3) is the only stopping shape on 3 vertices
        assert!(generate_random_game(3, KindWeights::new(0, 1, 0), 7, true).is_ok());
    }

    #[test]
    fn weights_parse() {
        assert_eq!("1:2:3".parse::<KindWeights>().unwrap(), KindWeights::new(1, 2, 3));
        assert!("1:2".parse::<KindWeights>().is_err());
        assert_eq!(KindWeights::new(4, 0, 1).to_string(), "4:0:1");
    }
}
