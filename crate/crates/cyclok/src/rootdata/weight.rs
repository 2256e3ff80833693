use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::Rational64;
use num_traits::{Signed, Zero};

/// `n/d` as a reduced rational.
pub fn r(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

/// Representative of `q mod 1` in `[0, 1)`.
pub fn frac(q: Rational64) -> Rational64 {
    q - q.floor()
}

/// A rational vector in ε-coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<Rational64>);

impl Weight {
    pub fn zero(dim: usize) -> Self {
        Weight(vec![Rational64::zero(); dim])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Weight(v.iter().map(|&x| Rational64::from_integer(x)).collect())
    }

    /// `ε_i` (zero-based index).
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut w = Self::zero(dim);
        w.0[i] = Rational64::from_integer(1);
        w
    }

    /// `(ε_1 + … + ε_dim)/2`.
    pub fn half_sum(dim: usize) -> Self {
        Weight(vec![r(1, 2); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn dot(&self, other: &Weight) -> Rational64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, q: Rational64) -> Weight {
        Weight(self.0.iter().map(|a| a * q).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|a| a.is_integer())
    }

    /// Embed into a longer coordinate vector at `offset`.
    pub fn embed(&self, total: usize, offset: usize) -> Weight {
        let mut w = Self::zero(total);
        w.0[offset..offset + self.dim()].clone_from_slice(&self.0);
        w
    }

    pub fn coords(&self) -> &[Rational64] {
        &self.0
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if a.is_integer() {
                write!(f, "{}", a.numer())?;
            } else {
                let sign = if a.is_negative() { "-" } else { "" };
                write!(f, "{sign}{}/{}", a.numer().abs(), a.denom())?;
            }
        }
        write!(f, "]")
    }
}
