use std::fmt;
use std::hash::{Hash, Hasher};

use num_rational::Rational64;
use num_traits::Zero;

use crate::rootdata::frac;

/// A character of the center, stored as its exponents on the center generators of the
/// space (a single `ζ_n` scalar for `GL_n`, `z0` and `z` for `Spin(2k)`, `z0` for
/// `Spin(2k+1)`, `-1` for `Sp(2k)`; products concatenate). Equality ignores the name.
#[derive(Clone, Debug, Eq)]
pub struct CentralCharacter {
    pub values: Vec<Rational64>,
    pub name: Option<String>,
}

impl CentralCharacter {
    pub fn new(values: Vec<Rational64>) -> Self {
        CentralCharacter {
            values: values.into_iter().map(frac).collect(),
            name: None,
        }
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &CentralCharacter) -> CentralCharacter {
        assert_eq!(
            self.values.len(),
            other.values.len(),
            "characters of different centers"
        );
        CentralCharacter::new(
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn pow(&self, m: i64) -> CentralCharacter {
        CentralCharacter::new(self.values.iter().map(|a| a * m).collect())
    }

    /// The character of an external product.
    pub fn concat(&self, other: &CentralCharacter) -> CentralCharacter {
        let mut values = self.values.clone();
        values.extend_from_slice(&other.values);
        CentralCharacter::new(values)
    }

    pub fn label(&self) -> String {
        if let Some(n) = &self.name {
            return n.clone();
        }
        if self.is_trivial() {
            return "trivial".into();
        }
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        format!("({})", parts.join(", "))
    }
}

impl PartialEq for CentralCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.values == other.values
    }
}

impl Hash for CentralCharacter {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.values.hash(state);
    }
}

impl fmt::Display for CentralCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::r;

    #[test]
    fn multiplicative() {
        let a = CentralCharacter::new(vec![r(1, 4), r(1, 2)]);
        let b = CentralCharacter::new(vec![r(3, 4), r(1, 2)]);
        assert!(a.mul(&b).is_trivial());
        assert_eq!(a.pow(2), CentralCharacter::new(vec![r(1, 2), r(0, 1)]));
        assert_eq!(a.clone().named("x"), a);
        assert_eq!(a.concat(&b).values.len(), 4);
    }
}
