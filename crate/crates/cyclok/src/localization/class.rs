use crate::collections::CentralCharacter;
use crate::cyclotomic::{lcm, Cyclotomic};

/// Bookkeeping carried alongside a localized class.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassMetadata {
    pub rank: Option<u64>,
    pub central: Option<CentralCharacter>,
    /// Multidegree of a line bundle.
    pub degree: Option<Vec<i64>>,
    /// Line-bundle twist applied to pin a spinor class to unit length.
    pub twist: Option<i64>,
}

/// The vector `(v(F)_p)_p` of traces of `t0` on the fibers at the fixed points, ordered
/// like the fixed points of the owning space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalizedClass {
    /// Descriptor string of the owning space.
    pub space: String,
    pub label: String,
    pub values: Vec<Cyclotomic>,
    pub metadata: ClassMetadata,
}

impl LocalizedClass {
    pub fn new(
        space: impl Into<String>,
        label: impl Into<String>,
        values: Vec<Cyclotomic>,
        metadata: ClassMetadata,
    ) -> Self {
        LocalizedClass {
            space: space.into(),
            label: label.into(),
            values,
            metadata,
        }
    }

    pub fn conductor(&self) -> usize {
        self.values.iter().fold(1, |acc, v| lcm(acc, v.conductor()))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Cyclotomic::is_zero)
    }

    /// `c · v`; metadata other than the central character is dropped.
    pub fn scale(&self, c: &Cyclotomic) -> LocalizedClass {
        LocalizedClass {
            space: self.space.clone(),
            label: format!("({c})*{}", self.label),
            values: self.values.iter().map(|v| v * c).collect(),
            metadata: ClassMetadata {
                central: self.metadata.central.clone(),
                ..ClassMetadata::default()
            },
        }
    }

    /// Direct sum; ranks add, the central character is kept only if both agree.
    pub fn add(&self, other: &LocalizedClass) -> LocalizedClass {
        assert_eq!(self.space, other.space, "classes on different spaces");
        let central = match (&self.metadata.central, &other.metadata.central) {
            (Some(a), Some(b)) if a == b => Some(a.clone()),
            _ => None,
        };
        LocalizedClass {
            space: self.space.clone(),
            label: format!("{}+{}", self.label, other.label),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
            metadata: ClassMetadata {
                rank: self
                    .metadata
                    .rank
                    .zip(other.metadata.rank)
                    .map(|(a, b)| a + b),
                central,
                ..ClassMetadata::default()
            },
        }
    }

    /// Tensor product on the same space.
    pub fn tensor(&self, other: &LocalizedClass) -> LocalizedClass {
        assert_eq!(self.space, other.space, "classes on different spaces");
        let central = self
            .metadata
            .central
            .as_ref()
            .zip(other.metadata.central.as_ref())
            .map(|(a, b)| a.mul(b));
        LocalizedClass {
            space: self.space.clone(),
            label: format!("{}*{}", self.label, other.label),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a * b)
                .collect(),
            metadata: ClassMetadata {
                rank: self
                    .metadata
                    .rank
                    .zip(other.metadata.rank)
                    .map(|(a, b)| a * b),
                central,
                ..ClassMetadata::default()
            },
        }
    }
}
