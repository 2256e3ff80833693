use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;

use super::system::RootKind;
use super::torus::TorusElement;
use super::weight::{frac, r};
use super::RootDataError;

/// A supported space, named either by family or by flag data `kind:rank:node`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SpaceDescriptor {
    /// `G/P_node` for a simply connected group.
    Flag {
        kind: RootKind,
        rank: usize,
        node: usize,
    },
    /// `P^{n-1}` with the `GL_n` torus.
    Projective {
        n: usize,
    },
    /// `G(k,n)` with the `GL_n` torus.
    Grassmannian {
        k: usize,
        n: usize,
    },
    /// `Q^{2k-2}`, a `D_k` flag space.
    QuadricEven {
        dim: usize,
    },
    /// `Q^{2k-1}`, a `B_k` flag space.
    QuadricOdd {
        dim: usize,
    },
    Hirzebruch {
        n: u64,
    },
    /// `OG(k,2k)`, one component.
    Og {
        k: usize,
    },
    /// `SG(k,2k)`.
    Sg {
        k: usize,
    },
    Product(Vec<SpaceDescriptor>),
}

impl SpaceDescriptor {
    /// Flag data `(kind, rank, node)` for homogeneous spaces of simple groups.
    pub fn flag_data(&self) -> Option<(RootKind, usize, usize)> {
        match *self {
            SpaceDescriptor::Flag { kind, rank, node } => Some((kind, rank, node)),
            SpaceDescriptor::Projective { n } => Some((RootKind::A, n - 1, 1)),
            SpaceDescriptor::Grassmannian { k, n } => Some((RootKind::A, n - 1, k)),
            SpaceDescriptor::QuadricEven { dim } => Some((RootKind::D, dim / 2 + 1, 1)),
            SpaceDescriptor::QuadricOdd { dim } => Some((RootKind::B, dim.div_ceil(2), 1)),
            SpaceDescriptor::Og { k } => Some((RootKind::D, k, k)),
            SpaceDescriptor::Sg { k } => Some((RootKind::C, k, k)),
            SpaceDescriptor::Hirzebruch { .. } | SpaceDescriptor::Product(_) => None,
        }
    }

    /// The factors of a product, or the space itself.
    pub fn factors(&self) -> Vec<&SpaceDescriptor> {
        match self {
            SpaceDescriptor::Product(fs) => fs.iter().flat_map(|f| f.factors()).collect(),
            other => vec![other],
        }
    }

    fn validate(&self) -> Result<(), RootDataError> {
        let bad = |m: String| Err(RootDataError::Parse(m));
        match self {
            SpaceDescriptor::Flag { kind, rank, node } => {
                if let Some(fr) = kind.fixed_rank() {
                    if fr != *rank {
                        return Err(RootDataError::UnsupportedType {
                            kind: kind.to_string(),
                            rank: *rank,
                        });
                    }
                }
                let min = match kind {
                    RootKind::B | RootKind::D => 2,
                    _ => 1,
                };
                if *rank < min {
                    return Err(RootDataError::UnsupportedType {
                        kind: kind.to_string(),
                        rank: *rank,
                    });
                }
                if *node == 0 || node > rank {
                    return Err(RootDataError::InvalidNode {
                        node: *node,
                        rank: *rank,
                    });
                }
                Ok(())
            }
            SpaceDescriptor::Projective { n } if *n < 2 => {
                bad(format!("projective:{n} needs n >= 2"))
            }
            SpaceDescriptor::Grassmannian { k, n } if *k == 0 || k >= n => {
                bad(format!("grassmannian:{k}:{n} needs 0 < k < n"))
            }
            SpaceDescriptor::QuadricEven { dim } if *dim < 4 || dim % 2 == 1 => {
                bad(format!("quadric-even:{dim} needs an even dimension >= 4"))
            }
            SpaceDescriptor::QuadricOdd { dim } if *dim < 3 || dim % 2 == 0 => {
                bad(format!("quadric-odd:{dim} needs an odd dimension >= 3"))
            }
            SpaceDescriptor::Og { k } if *k < 3 => bad(format!("og:{k} needs k >= 3")),
            SpaceDescriptor::Sg { k } if *k < 1 => bad(format!("sg:{k} needs k >= 1")),
            SpaceDescriptor::Product(fs) => {
                if fs.len() < 2 {
                    return bad("a product needs at least two factors".into());
                }
                fs.iter().try_for_each(|f| f.validate())
            }
            _ => Ok(()),
        }
    }
}

fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

impl FromStr for SpaceDescriptor {
    type Err = RootDataError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let parse_err = || RootDataError::Parse(s.to_string());
        if let Some(inner) = s.strip_prefix("prod(").and_then(|x| x.strip_suffix(')')) {
            let fs = split_top_level(inner, ';')
                .into_iter()
                .map(str::parse)
                .collect::<Result<Vec<_>, _>>()?;
            let d = SpaceDescriptor::Product(fs);
            d.validate()?;
            return Ok(d);
        }
        let parts: Vec<&str> = s.split(':').map(str::trim).collect();
        let num = |i: usize| -> Result<usize, RootDataError> {
            parts
                .get(i)
                .ok_or_else(parse_err)?
                .parse()
                .map_err(|_| parse_err())
        };
        let d = match (parts[0].to_ascii_lowercase().as_str(), parts.len()) {
            ("projective", 2) => SpaceDescriptor::Projective { n: num(1)? },
            ("grassmannian", 3) => SpaceDescriptor::Grassmannian {
                k: num(1)?,
                n: num(2)?,
            },
            ("quadric-even", 2) => SpaceDescriptor::QuadricEven { dim: num(1)? },
            ("quadric-odd", 2) => SpaceDescriptor::QuadricOdd { dim: num(1)? },
            ("hirzebruch", 2) => SpaceDescriptor::Hirzebruch { n: num(1)? as u64 },
            ("og", 2) => SpaceDescriptor::Og { k: num(1)? },
            ("sg", 2) => SpaceDescriptor::Sg { k: num(1)? },
            (_, 3) => SpaceDescriptor::Flag {
                kind: parts[0].parse()?,
                rank: num(1)?,
                node: num(2)?,
            },
            _ => return Err(parse_err()),
        };
        d.validate()?;
        Ok(d)
    }
}

impl fmt::Display for SpaceDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceDescriptor::Flag { kind, rank, node } => write!(f, "{kind}:{rank}:{node}"),
            SpaceDescriptor::Projective { n } => write!(f, "projective:{n}"),
            SpaceDescriptor::Grassmannian { k, n } => write!(f, "grassmannian:{k}:{n}"),
            SpaceDescriptor::QuadricEven { dim } => write!(f, "quadric-even:{dim}"),
            SpaceDescriptor::QuadricOdd { dim } => write!(f, "quadric-odd:{dim}"),
            SpaceDescriptor::Hirzebruch { n } => write!(f, "hirzebruch:{n}"),
            SpaceDescriptor::Og { k } => write!(f, "og:{k}"),
            SpaceDescriptor::Sg { k } => write!(f, "sg:{k}"),
            SpaceDescriptor::Product(fs) => {
                write!(f, "prod(")?;
                for (i, x) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ";")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
        }
    }
}

fn spin(exps: Vec<Rational64>) -> TorusElement {
    TorusElement::with_canonical_spin(exps)
}

fn plain(exps: Vec<Rational64>) -> TorusElement {
    TorusElement::new(exps, None).expect("no spin coordinate")
}

/// `x_1 = 1, x_{j+1} = ζ_{2k-2}^j` with `x_0 = √∏ x_j`.
fn quadric_even_t0(k: usize) -> TorusElement {
    let m = 2 * k as i64 - 2;
    spin((0..k as i64).map(|j| r(j, m)).collect())
}

/// The element of type `kind` at `node` from the case analysis.
fn flag_t0(kind: RootKind, n: usize, node: usize) -> Result<TorusElement, RootDataError> {
    let ni = n as i64;
    let unsupported = || RootDataError::UnsupportedFamily(format!("{kind}:{n}:{node}"));
    match kind {
        RootKind::A => {
            let d = ni + 1;
            let i = node as i64;
            let exps = if (i * (d - i)) % 2 == 0 {
                (0..d).map(|j| r(j, d)).collect()
            } else {
                (0..d).map(|j| r(2 * j + 1, 2 * d)).collect()
            };
            Ok(plain(exps))
        }
        RootKind::B if node == 1 => {
            let mut exps = vec![r(1, 2)];
            exps.extend((2..=ni).map(|m| r(2 * (m - 2) + 1, 4 * ni - 2)));
            Ok(spin(exps))
        }
        RootKind::B if node == n => Ok(spin((1..=ni).map(|k| r(k, 2 * ni)).collect())),
        RootKind::C if node == n => Ok(plain((1..=ni).map(|k| r(k, 2 * ni + 2)).collect())),
        RootKind::C if node == 1 => Ok(plain((1..=ni).map(|k| r(2 * k - 1, 4 * ni)).collect())),
        RootKind::D if node == 1 || node + 1 >= n => {
            Ok(spin((1..=ni).map(|k| r(ni - k, 2 * ni - 2)).collect()))
        }
        _ => Err(unsupported()),
    }
}

/// The explicit torus element for `space`, with the square-root choice `x = √∏ x_i` taken
/// as half the exponent sum.
pub fn construct_t0(space: &SpaceDescriptor) -> Result<TorusElement, RootDataError> {
    match space {
        SpaceDescriptor::Flag { kind, rank, node } => {
            space.validate()?;
            flag_t0(*kind, *rank, *node)
        }
        SpaceDescriptor::Projective { n } | SpaceDescriptor::Grassmannian { n, .. } => {
            let m = *n as i64;
            Ok(plain((0..m).map(|j| r(j, m)).collect()))
        }
        SpaceDescriptor::QuadricEven { dim } | SpaceDescriptor::Og { k: dim } => {
            let k = match space {
                SpaceDescriptor::QuadricEven { .. } => dim / 2 + 1,
                _ => *dim,
            };
            Ok(quadric_even_t0(k))
        }
        SpaceDescriptor::QuadricOdd { dim } => {
            let k = dim.div_ceil(2) as i64;
            let m = 2 * k - 1;
            let mut exps = vec![r(1, 2)];
            exps.extend((1..k).map(|j| r(1, 2) + r(j, m)));
            let x0 = r(k, 4) + r(k * k * (k - 1), 2 * m);
            TorusElement::new(exps, Some(x0))
        }
        SpaceDescriptor::Sg { k } => {
            let m = *k as i64;
            Ok(plain((1..=m).map(|j| r(j, 2 * m + 2)).collect()))
        }
        SpaceDescriptor::Hirzebruch { n } => {
            if n % 2 == 1 {
                return Err(RootDataError::OddHirzebruchIndex(*n));
            }
            let n = *n as i64;
            Ok(if n % 4 == 2 {
                plain(vec![r(1, 4), frac(r(n + 1, 4)), r(0, 1)])
            } else {
                plain(vec![r(1, 4), frac(r(n - 1, 4)), r(1, 2)])
            })
        }
        SpaceDescriptor::Product(fs) => {
            let parts = fs.iter().map(construct_t0).collect::<Result<Vec<_>, _>>()?;
            TorusElement::concat(&parts)
        }
    }
}
