//! Witnesses for the optimal value vector and for value comparisons.
//!
//! A certificate pairs a candidate `z` for `G` with a candidate `s` for the
//! stopping game `G'`. Because `G'` is stopping, `s = I_{G'}(s)` pins `s` to
//! the optimal values of `G'`, which lie within `δ/2` of those of `G`; the
//! `δ`-separation of `Ω_n` then leaves only one fixed point `z` of `I_G` close
//! enough to `s`.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::game::Game;
use crate::rational::{Rational, format_rational};
use crate::transform::{beta_stopping, StoppingTransform};
use crate::vector::RationalVector;

use super::hoffman_karp::hoffman_karp_with;
use super::operator::is_fixed_point;
use super::rounding::delta;
use super::strategies::ReplyMethod;
use crate::markov::in_omega;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub n: usize,
    /// Stopping exponent of `G'`.
    pub c: u32,
    /// Candidate optimal values of `G`.
    pub z: RationalVector,
    /// Candidate optimal values of `G'`.
    pub s: RationalVector,
}

impl Certificate {
    /// `4^(-2n)`.
    pub fn delta(&self) -> Rational {
        delta(self.n)
    }
}

fn transformed(game: &Game, c: u32, s: &RationalVector) -> Result<(Game, StoppingTransform)> {
    let (g2, tr) = beta_stopping(game, c)?;
    if s.len() != g2.n() {
        return Err(Error::DimensionMismatch { what: "s", expected: g2.n(), got: s.len() });
    }
    Ok((g2, tr))
}

/// Accepts iff `z = I_G(z)`, `s = I_{G'}(s)`, every `z(i)` lies in `Ω_n`, and
/// `|z(i) - s(i')| < δ/2` at every original vertex `i` with image `i'`.
pub fn verify_ovv_certificate(game: &Game, cert: &Certificate) -> Result<bool> {
    let n = game.n();
    if cert.n != n {
        return Err(Error::DimensionMismatch { what: "certificate n", expected: n, got: cert.n });
    }
    if cert.z.len() != n {
        return Err(Error::DimensionMismatch { what: "z", expected: n, got: cert.z.len() });
    }
    let (g2, tr) = transformed(game, cert.c, &cert.s)?;
    if !cert.z.iter().all(|x| in_omega(x, n)) {
        return Ok(false);
    }
    if !is_fixed_point(game, &cert.z)? || !is_fixed_point(&g2, &cert.s)? {
        return Ok(false);
    }
    let radius = cert.delta() / Rational::from_integer(2.into());
    Ok(game.vertices().all(|i| (&cert.z[i] - &cert.s[tr.map(i)]).abs() < radius))
}

fn value_check(game: &Game, s: &RationalVector, c: u32) -> Result<Option<Rational>> {
    let (g2, _) = transformed(game, c, s)?;
    if !is_fixed_point(&g2, s)? {
        return Ok(None);
    }
    Ok(Some(s[g2.start()].clone()))
}

/// Accepts iff `s = I_{G'}(s)` and `s` at the start vertex of `G'` exceeds `alpha`.
pub fn verify_value_certificate(game: &Game, s: &RationalVector, alpha: &Rational, c: u32) -> Result<bool> {
    Ok(value_check(game, s, c)?.is_some_and(|x| x > *alpha))
}

/// The complement form: accepts iff `s = I_{G'}(s)` and `s` at the start of `G'` is at most `alpha`.
pub fn verify_value_complement_certificate(game: &Game, s: &RationalVector, alpha: &Rational, c: u32) -> Result<bool> {
    Ok(value_check(game, s, c)?.is_some_and(|x| x <= *alpha))
}

/// Exact optimal values of `G'` for exponent `c`.
pub fn transformed_values(game: &Game, c: u32) -> Result<(Game, StoppingTransform, RationalVector)> {
    let (g2, tr) = beta_stopping(game, c)?;
    let s = hoffman_karp_with(&g2, ReplyMethod::StrategyIteration)?.values;
    Ok((g2, tr, s))
}

/// Builds the true certificate: `z` from the exact solver, `s` from `G'`.
pub fn certify(game: &Game, c: u32) -> Result<Certificate> {
    let report = super::solve::solve(game, super::solve::Method::Auto)?;
    if let Some(cert) = report.certificate.filter(|cert| cert.c == c) {
        return Ok(cert);
    }
    let (_, _, s) = transformed_values(game, c)?;
    Ok(Certificate { n: game.n(), c, z: report.values, s })
}

/// Renders a short reason when `verify_ovv_certificate` would reject; used by the CLI.
pub fn explain_rejection(game: &Game, cert: &Certificate) -> Result<Option<String>> {
    let n = game.n();
    if verify_ovv_certificate(game, cert)? {
        return Ok(None);
    }
    if let Some(x) = cert.z.iter().find(|x| !in_omega(x, n)) {
        return Ok(Some(format!("z component {} is not in Omega_{n}", format_rational(x))));
    }
    if !is_fixed_point(game, &cert.z)? {
        return Ok(Some("z is not a fixed point of the game operator".into()));
    }
    let (g2, _) = beta_stopping(game, cert.c)?;
    if !is_fixed_point(&g2, &cert.s)? {
        return Ok(Some("s is not a fixed point of the transformed game operator".into()));
    }
    Ok(Some("z and s differ by at least delta/2 at some vertex".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::rational::{int, ratio};

    #[test]
    fn ovv_examples() {
        let a = game_a();
        let cert = certify(&a, 9).unwrap();
        assert_eq!(cert.z, RationalVector::new(vec![ratio(1, 2), int(0), int(1)]));
        assert!(verify_ovv_certificate(&a, &cert).unwrap());

        let mut bad = cert.clone();
        bad.z[1] = &bad.z[1] + cert.delta();
        assert!(!verify_ovv_certificate(&a, &bad).unwrap());

        let d = game_d();
        let cert = certify(&d, 9).unwrap();
        assert!(verify_ovv_certificate(&d, &cert).unwrap());
        let mut fake = cert.clone();
        fake.z = RationalVector::new(vec![ratio(1, 8), ratio(1, 8), int(0), int(1)]);
        assert!(is_fixed_point(&d, &fake.z).unwrap());
        assert!(!verify_ovv_certificate(&d, &fake).unwrap());
        assert!(explain_rejection(&d, &fake).unwrap().unwrap().contains("differ"));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = game_a();
        let mut cert = certify(&a, 9).unwrap();
        cert.s = RationalVector::zeros(3);
        assert!(verify_ovv_certificate(&a, &cert).is_err());
    }

    #[test]
    fn value_examples() {
        let b = game_b();
        let (_, _, s) = transformed_values(&b, 9).unwrap();
        assert!(verify_value_certificate(&b, &s, &ratio(1, 2), 9).unwrap());
        assert!(!verify_value_complement_certificate(&b, &s, &ratio(1, 2), 9).unwrap());

        let a = game_a();
        let (_, _, s) = transformed_values(&a, 9).unwrap();
        assert!(!verify_value_certificate(&a, &s, &ratio(1, 2), 9).unwrap());
        assert!(verify_value_complement_certificate(&a, &s, &ratio(1, 2), 9).unwrap());
        let mut broken = s.clone();
        broken[1] = int(1);
        assert!(!verify_value_certificate(&a, &broken, &int(0), 9).unwrap());
    }
}
