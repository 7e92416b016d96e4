use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// Exact per-vertex vector, indexed by 1-based vertex id.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RationalVector(Vec<Rational>);

impl RationalVector {
    pub fn new(values: Vec<Rational>) -> Self {
        RationalVector(values)
    }

    pub fn zeros(n: usize) -> Self {
        RationalVector(vec![Rational::zero(); n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Rational> {
        self.0
    }

    /// Max-norm distance. Panics on length mismatch.
    pub fn max_abs_diff(&self, other: &RationalVector) -> Rational {
        assert_eq!(self.len(), other.len(), "vector lengths differ");
        self.0.iter().zip(&other.0).map(|(a, b)| (a - b).abs()).max().unwrap_or_else(Rational::zero)
    }

    /// `self <= other` in every component.
    pub fn le_componentwise(&self, other: &RationalVector) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Every component in `[0, 1]`.
    pub fn is_probability_vector(&self) -> bool {
        let one = Rational::one();
        self.0.iter().all(|x| !x.is_negative() && x <= &one)
    }
}

impl Index<usize> for RationalVector {
    type Output = Rational;

    fn index(&self, v: usize) -> &Rational {
        &self.0[v - 1]
    }
}

impl IndexMut<usize> for RationalVector {
    fn index_mut(&mut self, v: usize) -> &mut Rational {
        &mut self.0[v - 1]
    }
}

impl FromIterator<Rational> for RationalVector {
    fn from_iter<I: IntoIterator<Item = Rational>>(iter: I) -> Self {
        RationalVector(iter.into_iter().collect())
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}
