//! Benchmark suite helpers.

use ssg_core::{generate_random_game, is_stopping, Game, KindWeights};

/// Named families of generated games.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// All three kinds, resampled until stopping.
    Stopping,
    /// All three kinds, no stopping requirement.
    Mixed,
    /// Max and min only.
    AvgFree,
    /// Max and avg only.
    MaxOnly,
    /// Min and avg only.
    MinOnly,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::Stopping, Family::Mixed, Family::AvgFree, Family::MaxOnly, Family::MinOnly];

    pub fn name(self) -> &'static str {
        match self {
            Family::Stopping => "stopping",
            Family::Mixed => "mixed",
            Family::AvgFree => "avg-free",
            Family::MaxOnly => "max-only",
            Family::MinOnly => "min-only",
        }
    }

    fn weights(self) -> KindWeights {
        match self {
            Family::Stopping | Family::Mixed => KindWeights::new(1, 1, 1),
            Family::AvgFree => KindWeights::new(1, 1, 0),
            Family::MaxOnly => KindWeights::new(1, 0, 1),
            Family::MinOnly => KindWeights::new(0, 1, 1),
        }
    }
}

/// `count` games of size `n` from `family`, seeded `seed0, seed0 + 1, ...`.
pub fn suite(family: Family, n: usize, count: usize, seed0: u64) -> Vec<Game> {
    (0..count as u64)
        .map(|k| {
            generate_random_game(n, family.weights(), seed0 + k, family == Family::Stopping)
                .expect("generator parameters are valid")
        })
        .collect()
}

/// Mixed games that are not stopping, for the transform route.
pub fn non_stopping_suite(n: usize, count: usize, seed0: u64) -> Vec<Game> {
    (seed0..)
        .map(|s| generate_random_game(n, KindWeights::new(1, 1, 1), s, false).expect("generator parameters are valid"))
        .filter(|g| !is_stopping(g))
        .take(count)
        .collect()
}
