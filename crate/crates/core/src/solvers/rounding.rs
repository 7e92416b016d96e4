//! Snapping approximations onto `Ω_n`.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::markov::in_omega;
use crate::rational::{closest_with_bounded_denominator, pow4, Rational};

/// `δ = 4^(-2n)`, the least gap between distinct members of `Ω_n`.
pub fn delta(n: usize) -> Rational {
    Rational::new(1.into(), pow4(2 * n as u64))
}

/// The member of `Ω_n` within `δ/2` of `x`, found as the best rational
/// approximation with denominator at most `4^n`. Distinct members are at
/// least `δ` apart, so at most one can qualify.
pub fn round_to_omega(x: &Rational, n: usize) -> Result<Rational> {
    let candidate = closest_with_bounded_denominator(x, &pow4(n as u64));
    let radius = delta(n) / Rational::from_integer(2.into());
    if in_omega(&candidate, n) && (&candidate - x).abs() < radius {
        Ok(candidate)
    } else {
        Err(Error::NoOmegaMember { x: x.clone(), n })
    }
}
