//! The local-optimality operator `I_G` and value iteration.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::game::{Game, VertexKind};
use crate::rational::{pow4, Rational};
use crate::vector::RationalVector;

fn check_len(game: &Game, v: &RationalVector) -> Result<()> {
    if v.len() != game.n() {
        return Err(Error::DimensionMismatch { what: "value vector", expected: game.n(), got: v.len() });
    }
    Ok(())
}

fn apply_unchecked(game: &Game, v: &RationalVector) -> RationalVector {
    game.vertices()
        .map(|i| {
            let kind = game.kind(i);
            if kind == VertexKind::Sink0 {
                return Rational::zero();
            }
            if kind == VertexKind::Sink1 {
                return Rational::one();
            }
            let c = game.children(i);
            let (a, b) = (&v[c[0]], &v[c[1]]);
            match kind {
                VertexKind::Max => a.max(b).clone(),
                VertexKind::Min => a.min(b).clone(),
                _ => (a + b) / Rational::from_integer(2.into()),
            }
        })
        .collect()
}

/// `I_G(v)`: max, min or average of the children per vertex kind; sinks map to 0 and 1.
pub fn apply_operator(game: &Game, v: &RationalVector) -> Result<RationalVector> {
    check_len(game, v)?;
    Ok(apply_unchecked(game, v))
}

/// Whether `v = I_G(v)` holds exactly.
pub fn is_fixed_point(game: &Game, v: &RationalVector) -> Result<bool> {
    Ok(apply_operator(game, v)? == *v)
}

/// `4^(-2n) / 4`.
pub fn default_epsilon(n: usize) -> Rational {
    Rational::new(1.into(), pow4(2 * n as u64 + 1))
}

/// The vector that is 1 at the 1-sink and 0 elsewhere.
pub fn initial_vector(game: &Game) -> RationalVector {
    let mut v = RationalVector::zeros(game.n());
    v[game.sink1()] = Rational::one();
    v
}

/// Endless sequence `I_G(v0), I_G(I_G(v0)), ...` starting from [`initial_vector`].
pub struct Iterates<'g> {
    game: &'g Game,
    current: RationalVector,
}

impl Iterator for Iterates<'_> {
    type Item = RationalVector;

    fn next(&mut self) -> Option<RationalVector> {
        let next = apply_unchecked(self.game, &self.current);
        self.current = next.clone();
        Some(next)
    }
}

pub fn iterates(game: &Game) -> Iterates<'_> {
    Iterates { game, current: initial_vector(game) }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ViOutcome {
    pub values: RationalVector,
    pub iterations: usize,
    /// Max-norm difference of the last two iterates.
    pub residual: Rational,
}

/// Iterates `I_G` until two consecutive iterates differ by less than `epsilon` in max norm.
pub fn value_iteration(game: &Game, max_iters: usize, epsilon: &Rational) -> Result<ViOutcome> {
    if *epsilon <= Rational::zero() {
        return Err(Error::Precondition("epsilon must be positive".into()));
    }
    let mut prev = initial_vector(game);
    let mut residual = Rational::one();
    for (k, next) in iterates(game).take(max_iters).enumerate() {
        residual = next.max_abs_diff(&prev);
        if residual < *epsilon {
            return Ok(ViOutcome { values: next, iterations: k + 1, residual });
        }
        prev = next;
    }
    Err(Error::NotConverged { iterations: max_iters, residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::rational::{int, ratio};
    use num_traits::Signed;

    fn vec(xs: &[Rational]) -> RationalVector {
        RationalVector::new(xs.to_vec())
    }

    #[test]
    fn operator_examples() {
        let a = game_a();
        assert_eq!(apply_operator(&a, &vec(&[int(0), int(0), int(1)])).unwrap(), vec(&[ratio(1, 2), int(0), int(1)]));
        let f = game_f();
        assert_eq!(apply_operator(&f, &vec(&[int(0), int(0), int(1)])).unwrap(), vec(&[int(1), int(0), int(1)]));
        let d = game_d();
        for x in [int(0), ratio(1, 8), ratio(1, 2), int(1)] {
            let v = vec(&[x.clone(), x, int(0), int(1)]);
            assert!(is_fixed_point(&d, &v).unwrap());
        }
        assert!(apply_operator(&d, &vec(&[int(0)])).is_err());
    }

    #[test]
    fn value_iteration_examples() {
        let a = game_a();
        assert_eq!(iterates(&a).next().unwrap(), vec(&[ratio(1, 2), int(0), int(1)]));
        let out = value_iteration(&a, 10, &default_epsilon(3)).unwrap();
        assert_eq!(out.values, vec(&[ratio(1, 2), int(0), int(1)]));

        let b = game_b();
        let eps = ratio(1, 1_000_000);
        let out = value_iteration(&b, 40, &eps).unwrap();
        assert!(out.iterations <= 40);
        assert!((&out.values[1] - ratio(2, 3)).abs() < eps);
        assert!((&out.values[2] - ratio(1, 3)).abs() < eps);

        let d = game_d();
        let out = value_iteration(&d, 10, &default_epsilon(4)).unwrap();
        assert_eq!(out.values, vec(&[int(0), int(0), int(0), int(1)]));
        assert_eq!(out.iterations, 1);
    }

    #[test]
    fn non_convergence_is_reported() {
        let b = game_b();
        assert!(matches!(value_iteration(&b, 3, &default_epsilon(4)), Err(Error::NotConverged { iterations: 3, .. })));
        assert!(value_iteration(&b, 3, &int(0)).is_err());
    }
}
