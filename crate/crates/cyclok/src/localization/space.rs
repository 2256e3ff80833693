use std::collections::HashSet;
use std::ops::Range;

use num_rational::Rational64;
use num_traits::{One, Zero};

use super::class::{ClassMetadata, LocalizedClass};
use super::LocalizationError;
use crate::collections::CentralCharacter;
use crate::cyclotomic::Cyclotomic;
use crate::rootdata::{
    build_root_system, r, RootKind, RootSystem, SpaceDescriptor, SpinCoordinate, TorusElement,
    Weight, WeylAction,
};

/// A torus-fixed point with its tangent weights and the fiber characters of the Picard
/// generators (one per generator, in the model's global coordinates).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPoint {
    pub label: String,
    pub tangent_weights: Vec<Weight>,
    pub line_characters: Vec<Weight>,
    /// Index of this point in each factor's own point list.
    pub factor_indices: Vec<usize>,
}

/// Placement of one factor of a product inside the global torus coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorInfo {
    pub descriptor: SpaceDescriptor,
    pub coords: Range<usize>,
    pub picard: Range<usize>,
    pub spin_block: Option<Range<usize>>,
    pub weyl_blocks: Vec<(Range<usize>, WeylAction)>,
    /// Generators of the acting group's center, embedded in global coordinates.
    pub center: Vec<TorusElement>,
    pub point_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceModel {
    pub descriptor: SpaceDescriptor,
    pub dimension: usize,
    pub torus_rank: usize,
    pub spin_block: Option<Range<usize>>,
    pub fixed_points: Vec<FixedPoint>,
    pub factors: Vec<FactorInfo>,
}

impl SpaceModel {
    pub fn name(&self) -> String {
        self.descriptor.to_string()
    }

    pub fn picard_rank(&self) -> usize {
        self.factors.last().map_or(0, |f| f.picard.end)
    }

    pub fn point_index(&self, label: &str) -> Option<usize> {
        self.fixed_points.iter().position(|p| p.label == label)
    }

    pub fn weyl_blocks(&self) -> Vec<(Range<usize>, WeylAction)> {
        self.factors
            .iter()
            .flat_map(|f| f.weyl_blocks.clone())
            .collect()
    }

    pub fn center_generators(&self) -> Vec<TorusElement> {
        self.factors.iter().flat_map(|f| f.center.clone()).collect()
    }

    /// The central character of a weight, as exponents on the center generators.
    pub fn central_character_of(&self, w: &Weight) -> Result<CentralCharacter, LocalizationError> {
        let mut values = Vec::new();
        for z in self.center_generators() {
            values.push(z.exponent_of(w)?);
        }
        Ok(CentralCharacter::new(values))
    }

    /// `Σ_g m_g · (fiber character of generator g at point p)`.
    pub fn line_weight(&self, point: usize, degrees: &[i64]) -> Result<Weight, LocalizationError> {
        if degrees.len() != self.picard_rank() {
            return Err(LocalizationError::ArityMismatch {
                expected: self.picard_rank(),
                got: degrees.len(),
            });
        }
        let p = &self.fixed_points[point];
        let mut w = Weight::zero(self.torus_rank);
        for (m, c) in degrees.iter().zip(&p.line_characters) {
            w = &w + &c.scale(Rational64::from_integer(*m));
        }
        Ok(w)
    }

    /// A class whose value at each point is the sum of `t0` on a list of weights.
    pub fn class_from_weights(
        &self,
        t0: &TorusElement,
        label: impl Into<String>,
        weights: &[Vec<Weight>],
        metadata: ClassMetadata,
    ) -> Result<LocalizedClass, LocalizationError> {
        let mut values = Vec::with_capacity(weights.len());
        for ws in weights {
            let mut v = Cyclotomic::zero();
            for w in ws {
                v = v + t0.evaluate(w)?;
            }
            values.push(v);
        }
        Ok(LocalizedClass::new(self.name(), label, values, metadata))
    }
}

fn flag_orbit(rs: &RootSystem, start: &Weight) -> Vec<Weight> {
    let mut seen: HashSet<Weight> = HashSet::new();
    let mut stack = vec![start.clone()];
    seen.insert(start.clone());
    while let Some(mu) = stack.pop() {
        for a in &rs.simple_roots {
            let c = mu.dot(a) * 2 / a.dot(a);
            if c.is_zero() {
                continue;
            }
            let next = &mu - &a.scale(c);
            if seen.insert(next.clone()) {
                stack.push(next);
            }
        }
    }
    let mut out: Vec<Weight> = seen.into_iter().collect();
    out.sort_by(|a, b| b.cmp(a));
    out
}

fn subset_label(mu: &Weight) -> String {
    let idx: Vec<String> = mu
        .coords()
        .iter()
        .enumerate()
        .filter(|(_, c)| c.is_one())
        .map(|(i, _)| (i + 1).to_string())
        .collect();
    format!("{{{}}}", idx.join(","))
}

fn spin_torus(exps: Vec<Rational64>, q: Rational64) -> TorusElement {
    let len = exps.len();
    TorusElement::with_spin(
        exps,
        Some(SpinCoordinate {
            exponent: q,
            start: 0,
            len,
        }),
    )
    .expect("center element satisfies the spin constraint")
}

fn plain_torus(exps: Vec<Rational64>) -> TorusElement {
    TorusElement::new(exps, None).expect("no spin coordinate")
}

struct LocalFactor {
    points: Vec<(String, Vec<Weight>, Vec<Weight>)>,
    torus_rank: usize,
    picard_rank: usize,
    spin: bool,
    weyl: Vec<(Range<usize>, WeylAction)>,
    center: Vec<TorusElement>,
    dimension: usize,
}

fn flag_factor(
    d: &SpaceDescriptor,
    kind: RootKind,
    rank: usize,
    node: usize,
) -> Result<LocalFactor, LocalizationError> {
    if !kind.is_classical() {
        return Err(LocalizationError::UnsupportedFamily(format!(
            "no fixed-point model for {d}"
        )));
    }
    let rs = build_root_system(kind, rank)?;
    let start = rs.character_weight(node);
    let dim = rs.dim_x(node)?;
    let mut points = Vec::new();
    for mu in flag_orbit(&rs, &start) {
        let tangent: Vec<Weight> = rs
            .roots
            .iter()
            .filter(|b| b.dot(&mu) > Rational64::zero())
            .map(|b| -b)
            .collect();
        debug_assert_eq!(tangent.len(), dim);
        let label = match d {
            SpaceDescriptor::Projective { .. } => format!(
                "p{}",
                subset_label(&mu).trim_matches(|c| c == '{' || c == '}')
            ),
            _ if kind == RootKind::A => subset_label(&mu),
            _ => mu.to_string(),
        };
        points.push((label, tangent, vec![mu]));
    }
    let n = rs.ambient_dim;
    let (spin, weyl, center) = match kind {
        RootKind::A => (
            false,
            vec![(0..n, WeylAction::Permutations)],
            vec![plain_torus(vec![r(1, n as i64); n])],
        ),
        RootKind::B => (
            true,
            vec![(0..n, WeylAction::SignedPermutations)],
            vec![spin_torus(vec![Rational64::zero(); n], r(1, 2))],
        ),
        RootKind::C => (
            false,
            vec![(0..n, WeylAction::SignedPermutations)],
            vec![plain_torus(vec![r(1, 2); n])],
        ),
        _ => (
            true,
            vec![(0..n, WeylAction::EvenSignedPermutations)],
            vec![
                spin_torus(vec![Rational64::zero(); n], r(1, 2)),
                spin_torus(vec![r(1, 2); n], r(1, 2) - r(n as i64, 4)),
            ],
        ),
    };
    Ok(LocalFactor {
        points,
        torus_rank: n,
        picard_rank: 1,
        spin,
        weyl,
        center,
        dimension: dim,
    })
}

fn hirzebruch_factor(n: u64) -> LocalFactor {
    let n = n as i64;
    let w = |v: [i64; 3]| Weight::from_ints(&v);
    let mut points = Vec::new();
    for i in 0..2usize {
        let mut base = [0i64; 3];
        base[i] = 1;
        base[1 - i] = -1;
        let mut fiber = [0i64; 3];
        fiber[i] = n;
        fiber[2] = 1;
        let neg_fiber = [-fiber[0], -fiber[1], -fiber[2]];
        let mut pull = [0i64; 3];
        pull[1 - i] = 1;
        points.push((
            format!("(p{},0)", i + 1),
            vec![w(fiber), w(base)],
            vec![w(pull), w([0, 0, 0])],
        ));
        points.push((
            format!("(p{},1)", i + 1),
            vec![w(neg_fiber), w(base)],
            vec![w(pull), w(fiber)],
        ));
    }
    LocalFactor {
        points,
        torus_rank: 3,
        picard_rank: 2,
        spin: false,
        weyl: vec![
            (0..2, WeylAction::Permutations),
            (2..3, WeylAction::Trivial),
        ],
        center: Vec::new(),
        dimension: 2,
    }
}

fn local_factor(d: &SpaceDescriptor) -> Result<LocalFactor, LocalizationError> {
    match d {
        SpaceDescriptor::Hirzebruch { n } => Ok(hirzebruch_factor(*n)),
        SpaceDescriptor::Product(_) => Err(LocalizationError::UnsupportedFamily(
            "nested product".into(),
        )),
        other => {
            let (kind, rank, node) = other
                .flag_data()
                .ok_or_else(|| LocalizationError::UnsupportedFamily(other.to_string()))?;
            flag_factor(other, kind, rank, node)
        }
    }
}

fn single(d: &SpaceDescriptor) -> Result<SpaceModel, LocalizationError> {
    let f = local_factor(d)?;
    let spin_block = f.spin.then_some(0..f.torus_rank);
    let fixed_points = f
        .points
        .into_iter()
        .enumerate()
        .map(
            |(i, (label, tangent_weights, line_characters))| FixedPoint {
                label,
                tangent_weights,
                line_characters,
                factor_indices: vec![i],
            },
        )
        .collect::<Vec<_>>();
    let info = FactorInfo {
        descriptor: d.clone(),
        coords: 0..f.torus_rank,
        picard: 0..f.picard_rank,
        spin_block: spin_block.clone(),
        weyl_blocks: f.weyl,
        center: f.center,
        point_count: fixed_points.len(),
    };
    Ok(SpaceModel {
        descriptor: d.clone(),
        dimension: f.dimension,
        torus_rank: f.torus_rank,
        spin_block,
        fixed_points,
        factors: vec![info],
    })
}

/// The fixed-point model of a supported space.
pub fn build_space(d: &SpaceDescriptor) -> Result<SpaceModel, LocalizationError> {
    match d {
        SpaceDescriptor::Product(fs) => {
            let models = fs.iter().map(build_space).collect::<Result<Vec<_>, _>>()?;
            product_space(&models)
        }
        other => single(other),
    }
}

/// The identity of a model's torus, with a zero spin coordinate where present.
fn identity_of(model: &SpaceModel) -> TorusElement {
    let exps = vec![Rational64::zero(); model.torus_rank];
    let spin = model.spin_block.clone().map(|b| SpinCoordinate {
        exponent: Rational64::zero(),
        start: b.start,
        len: b.len(),
    });
    TorusElement::with_spin(exps, spin).expect("identity satisfies the spin constraint")
}

fn shift(range: &Range<usize>, by: usize) -> Range<usize> {
    range.start + by..range.end + by
}

/// Cartesian product of fixed-point models; tangent weights and line characters are
/// embedded in concatenated torus coordinates.
pub fn product_space(models: &[SpaceModel]) -> Result<SpaceModel, LocalizationError> {
    if models.is_empty() {
        return Err(LocalizationError::ArityMismatch {
            expected: 1,
            got: 0,
        });
    }
    if models.iter().filter(|m| m.spin_block.is_some()).count() > 1 {
        return Err(LocalizationError::UnsupportedFamily(
            "products with more than one spin-cover factor".into(),
        ));
    }
    let total: usize = models.iter().map(|m| m.torus_rank).sum();
    let identities: Vec<TorusElement> = models.iter().map(identity_of).collect();
    let mut factors = Vec::new();
    let mut descriptors = Vec::new();
    let mut coord_offset = 0;
    let mut pic_offset = 0;
    let mut spin_block = None;
    let mut offsets = Vec::new();
    for (mi, m) in models.iter().enumerate() {
        offsets.push((coord_offset, pic_offset));
        if let Some(b) = &m.spin_block {
            spin_block = Some(shift(b, coord_offset));
        }
        for f in &m.factors {
            let center = f
                .center
                .iter()
                .map(|z| {
                    let mut parts = identities.clone();
                    parts[mi] = z.clone();
                    TorusElement::concat(&parts)
                })
                .collect::<Result<Vec<_>, _>>()?;
            factors.push(FactorInfo {
                descriptor: f.descriptor.clone(),
                coords: shift(&f.coords, coord_offset),
                picard: shift(&f.picard, pic_offset),
                spin_block: f.spin_block.as_ref().map(|b| shift(b, coord_offset)),
                weyl_blocks: f
                    .weyl_blocks
                    .iter()
                    .map(|(b, a)| (shift(b, coord_offset), *a))
                    .collect(),
                center,
                point_count: f.point_count,
            });
            descriptors.push(f.descriptor.clone());
        }
        coord_offset += m.torus_rank;
        pic_offset += m.picard_rank();
    }
    let mut fixed_points = vec![FixedPoint {
        label: String::new(),
        tangent_weights: Vec::new(),
        line_characters: Vec::new(),
        factor_indices: Vec::new(),
    }];
    for (mi, m) in models.iter().enumerate() {
        let (co, _) = offsets[mi];
        let mut next = Vec::with_capacity(fixed_points.len() * m.fixed_points.len());
        for acc in &fixed_points {
            for p in &m.fixed_points {
                let mut q = acc.clone();
                q.label = if mi == 0 {
                    p.label.clone()
                } else {
                    format!("{}x{}", acc.label, p.label)
                };
                q.tangent_weights
                    .extend(p.tangent_weights.iter().map(|w| w.embed(total, co)));
                q.line_characters
                    .extend(p.line_characters.iter().map(|w| w.embed(total, co)));
                q.factor_indices.extend(p.factor_indices.iter().copied());
                next.push(q);
            }
        }
        fixed_points = next;
    }
    let descriptor = if descriptors.len() == 1 {
        descriptors.pop().expect("one descriptor")
    } else {
        SpaceDescriptor::Product(descriptors)
    };
    Ok(SpaceModel {
        descriptor,
        dimension: models.iter().map(|m| m.dimension).sum(),
        torus_rank: total,
        spin_block,
        fixed_points,
        factors,
    })
}

/// External tensor product of one class per factor of `space`.
pub fn product_class(
    space: &SpaceModel,
    classes: &[LocalizedClass],
) -> Result<LocalizedClass, LocalizationError> {
    if classes.len() != space.factors.len() {
        return Err(LocalizationError::ArityMismatch {
            expected: space.factors.len(),
            got: classes.len(),
        });
    }
    for (c, f) in classes.iter().zip(&space.factors) {
        if c.values.len() != f.point_count {
            return Err(LocalizationError::SpaceMismatch {
                space: f.descriptor.to_string(),
                class: c.space.clone(),
            });
        }
    }
    let values = space
        .fixed_points
        .iter()
        .map(|p| {
            p.factor_indices
                .iter()
                .zip(classes)
                .map(|(&i, c)| c.values[i].clone())
                .product()
        })
        .collect();
    let label = format!(
        "prod({})",
        classes
            .iter()
            .map(|c| c.label.as_str())
            .collect::<Vec<_>>()
            .join(";")
    );
    let rank = classes
        .iter()
        .map(|c| c.metadata.rank)
        .try_fold(1u64, |acc, r| r.map(|r| acc * r));
    let central = classes
        .iter()
        .map(|c| c.metadata.central.clone())
        .try_fold(CentralCharacter::new(Vec::new()), |acc, ch| {
            ch.map(|ch| acc.concat(&ch))
        });
    Ok(LocalizedClass::new(
        space.name(),
        label,
        values,
        ClassMetadata {
            rank,
            central,
            ..ClassMetadata::default()
        },
    ))
}
