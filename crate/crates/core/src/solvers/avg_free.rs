//! Quadratic-time attractor solver for games without average vertices.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::game::{Game, VertexKind};
use crate::rational::Rational;
use crate::vector::RationalVector;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AvgFreeOutcome {
    pub values: RationalVector,
    /// Executions of the outer repeat loop.
    pub passes: usize,
}

/// Grows the determined set `D` from the two sinks until it is static.
///
/// A pass visits `V \ D` in vertex order and adds a vertex as soon as its
/// rule fires, so later vertices of the same pass already see it. Vertices
/// never determined keep value 0.
pub fn solve_avg_free_counted(game: &Game) -> Result<AvgFreeOutcome> {
    if game.has_kind(VertexKind::Avg) {
        return Err(Error::Precondition("game has average vertices".into()));
    }
    let n = game.n();
    let mut in_d = vec![false; n + 1];
    in_d[game.sink0()] = true;
    in_d[game.sink1()] = true;
    // value 1 at the 1-sink: otherwise no rule could ever fire
    let mut one = vec![false; n + 1];
    one[game.sink1()] = true;
    let mut undetermined = n - 2;
    let mut passes = 0;
    while undetermined > 0 {
        passes += 1;
        let mut grew = false;
        for i in game.non_sinks() {
            if in_d[i] {
                continue;
            }
            let c = game.children(i);
            let ones = c.iter().filter(|&&j| in_d[j] && one[j]).count();
            let zeros = c.iter().filter(|&&j| in_d[j] && !one[j]).count();
            let decided = match game.kind(i) {
                VertexKind::Max if ones >= 1 => Some(true),
                VertexKind::Max if zeros == 2 => Some(false),
                VertexKind::Min if zeros >= 1 => Some(false),
                VertexKind::Min if ones == 2 => Some(true),
                _ => None,
            };
            if let Some(value) = decided {
                in_d[i] = true;
                one[i] = value;
                undetermined -= 1;
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }
    let values = game.vertices().map(|i| if one[i] { Rational::one() } else { Rational::zero() }).collect();
    Ok(AvgFreeOutcome { values, passes })
}

/// Exact optimal value vector of a game without average vertices; every component is 0 or 1.
pub fn solve_avg_free(game: &Game) -> Result<RationalVector> {
    solve_avg_free_counted(game).map(|o| o.values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::game::VertexKind::*;
    use crate::rational::int;

    fn values(xs: &[i64]) -> RationalVector {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn examples() {
        assert_eq!(solve_avg_free(&game_f()).unwrap()[1], int(1));
        assert_eq!(solve_avg_free(&game_e()).unwrap(), values(&[0, 0, 0, 1]));
        assert_eq!(solve_avg_free(&game_d()).unwrap(), values(&[0, 0, 0, 1]));
        assert_eq!(solve_avg_free(&game_c()).unwrap(), values(&[0, 0, 1]));
        assert!(solve_avg_free(&game_a()).is_err());
    }

    #[test]
    fn pass_count_on_a_reversed_chain() {
        // each pass can only settle the highest remaining vertex
        let g = Game::new(6, 1, &[(Max, [2, 5]), (Min, [3, 6]), (Max, [4, 5]), (Max, [6, 5])]).unwrap();
        let out = solve_avg_free_counted(&g).unwrap();
        assert_eq!(out.values, values(&[1, 1, 1, 1, 0, 1]));
        assert!(out.passes <= g.n() - 2);
        assert_eq!(out.passes, 4);
    }
}
