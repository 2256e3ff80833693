use std::fmt;
use std::str::FromStr;

use super::CollectionError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpinorSign {
    Plus,
    Minus,
}

/// A homogeneous bundle named in the text grammar `O(3)`, `O(1,2)`, `schur[2,1]`,
/// `spinor+`, `spinor-`, `spinor`, `prod(O(1);schur[1])`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BundleDescriptor {
    /// Line bundle with one degree per Picard generator.
    Line(Vec<i64>),
    /// `Σ^λ U` for the tautological subbundle `U`.
    Schur(Vec<u32>),
    /// Spinor bundle; `None` on odd quadrics.
    Spinor(Option<SpinorSign>),
    Product(Vec<BundleDescriptor>),
}

fn split_top(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ';' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

impl FromStr for BundleDescriptor {
    type Err = CollectionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let err = || CollectionError::Parse(s.to_string());
        if let Some(inner) = s.strip_prefix("prod(").and_then(|x| x.strip_suffix(')')) {
            let parts = split_top(inner)
                .into_iter()
                .map(str::parse)
                .collect::<Result<Vec<_>, _>>()?;
            if parts.len() < 2 {
                return Err(err());
            }
            return Ok(BundleDescriptor::Product(parts));
        }
        if let Some(inner) = s.strip_prefix("O(").and_then(|x| x.strip_suffix(')')) {
            let degrees = inner
                .split(',')
                .map(|d| d.trim().parse::<i64>().map_err(|_| err()))
                .collect::<Result<Vec<_>, _>>()?;
            return Ok(BundleDescriptor::Line(degrees));
        }
        if let Some(inner) = s.strip_prefix("schur[").and_then(|x| x.strip_suffix(']')) {
            let parts: Vec<u32> = if inner.trim().is_empty() {
                Vec::new()
            } else {
                inner
                    .split(',')
                    .map(|d| d.trim().parse::<u32>().map_err(|_| err()))
                    .collect::<Result<Vec<_>, _>>()?
            };
            if parts.windows(2).any(|w| w[0] < w[1]) {
                return Err(err());
            }
            return Ok(BundleDescriptor::Schur(parts));
        }
        match s {
            "spinor+" => Ok(BundleDescriptor::Spinor(Some(SpinorSign::Plus))),
            "spinor-" => Ok(BundleDescriptor::Spinor(Some(SpinorSign::Minus))),
            "spinor" => Ok(BundleDescriptor::Spinor(None)),
            _ => Err(err()),
        }
    }
}

impl fmt::Display for BundleDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: Vec<String>, sep: &str| v.join(sep);
        match self {
            BundleDescriptor::Line(d) => {
                write!(
                    f,
                    "O({})",
                    join(d.iter().map(|x| x.to_string()).collect(), ",")
                )
            }
            BundleDescriptor::Schur(l) => {
                write!(
                    f,
                    "schur[{}]",
                    join(l.iter().map(|x| x.to_string()).collect(), ",")
                )
            }
            BundleDescriptor::Spinor(Some(SpinorSign::Plus)) => f.write_str("spinor+"),
            BundleDescriptor::Spinor(Some(SpinorSign::Minus)) => f.write_str("spinor-"),
            BundleDescriptor::Spinor(None) => f.write_str("spinor"),
            BundleDescriptor::Product(ps) => {
                write!(
                    f,
                    "prod({})",
                    join(ps.iter().map(|p| p.to_string()).collect(), ";")
                )
            }
        }
    }
}
