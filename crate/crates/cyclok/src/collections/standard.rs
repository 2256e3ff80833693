use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_rational::Rational64;
use num_traits::{One, Zero};

use super::line::{line_bundle_class, restrict_t0};
use super::quadric::{quadric_collection, raw_spinor_class, spinor_class};
use super::schur::{kapranov_collection, schur_class};
use super::{BundleDescriptor, CentralCharacter, CollectionError, SpinorSign};
use crate::localization::{build_space, product_class, product_space, LocalizedClass, SpaceModel};
use crate::rootdata::{construct_t0, r, RootKind, SpaceDescriptor, TorusElement};

/// A space, its special element and the localized classes of a full exceptional
/// collection, in collection order.
#[derive(Clone, Debug)]
pub struct Collection {
    pub space: SpaceModel,
    pub t0: TorusElement,
    pub classes: Vec<LocalizedClass>,
}

impl Collection {
    pub fn labels(&self) -> Vec<String> {
        self.classes.iter().map(|c| c.label.clone()).collect()
    }
}

fn spinor_plus_reference(d: &SpaceDescriptor) -> Result<Vec<Rational64>, CollectionError> {
    static CACHE: OnceLock<Mutex<HashMap<String, Vec<Rational64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = d.to_string();
    if let Some(v) = cache.lock().expect("cache lock").get(&key) {
        return Ok(v.clone());
    }
    let space = build_space(d)?;
    let t0 = construct_t0(d)?;
    let v = raw_spinor_class(&space, &t0, Some(SpinorSign::Plus))?
        .metadata
        .central
        .expect("spinor classes carry a character")
        .values;
    cache.lock().expect("cache lock").insert(key, v.clone());
    Ok(v)
}

fn factor_name(d: &SpaceDescriptor, values: &[Rational64]) -> Result<String, CollectionError> {
    let trivial = values.iter().all(Zero::is_zero);
    let Some((kind, rank, _)) = d.flag_data() else {
        return Ok(CentralCharacter::new(values.to_vec()).label());
    };
    Ok(match kind {
        RootKind::A => {
            let n = rank as i64 + 1;
            format!("m={} mod {n}", (values[0] * n).to_integer())
        }
        RootKind::B | RootKind::C => if trivial { "trivial" } else { "nontrivial" }.to_string(),
        RootKind::D => {
            let chi0 = [Rational64::zero(), r(1, 2)];
            if trivial {
                "trivial".into()
            } else if values == chi0 {
                "chi0".into()
            } else if matches!(d, SpaceDescriptor::QuadricEven { .. }) {
                let plus = spinor_plus_reference(d)?;
                let minus = CentralCharacter::new(plus.clone())
                    .mul(&CentralCharacter::new(chi0.to_vec()))
                    .values;
                if values == plus.as_slice() {
                    "chi+".into()
                } else if values == minus.as_slice() {
                    "chi-".into()
                } else {
                    CentralCharacter::new(values.to_vec()).label()
                }
            } else {
                CentralCharacter::new(values.to_vec()).label()
            }
        }
        _ => CentralCharacter::new(values.to_vec()).label(),
    })
}

/// Attach the conventional name (`m=… mod n`, `chi0`, `chi+`, `chi-`, `trivial`,
/// `nontrivial`) to a character of the center of `space`.
pub(crate) fn named_character(
    space: &SpaceModel,
    ch: CentralCharacter,
) -> Result<CentralCharacter, CollectionError> {
    let mut names = Vec::new();
    let mut offset = 0;
    for f in &space.factors {
        let len = f.center.len();
        names.push(factor_name(
            &f.descriptor,
            &ch.values[offset..offset + len],
        )?);
        offset += len;
    }
    let name = if names.len() == 1 {
        names.pop().expect("one factor")
    } else if ch.is_trivial() {
        "trivial".into()
    } else {
        format!("({})", names.join(", "))
    };
    Ok(ch.named(name))
}

/// The localized class of a bundle on `space` at `t0`.
pub fn bundle_class(
    space: &SpaceModel,
    t0: &TorusElement,
    d: &BundleDescriptor,
) -> Result<LocalizedClass, CollectionError> {
    match d {
        BundleDescriptor::Line(degrees) => line_bundle_class(space, t0, degrees),
        BundleDescriptor::Schur(lambda) => schur_class(space, t0, lambda),
        BundleDescriptor::Spinor(sign) => spinor_class(space, t0, *sign),
        BundleDescriptor::Product(parts) => {
            if parts.len() != space.factors.len() {
                return Err(CollectionError::UnsupportedBundle {
                    space: space.name(),
                    bundle: d.to_string(),
                });
            }
            let mut classes = Vec::with_capacity(parts.len());
            for (f, part) in space.factors.iter().zip(parts) {
                let fs = build_space(&f.descriptor)?;
                let ft = restrict_t0(t0, f)?;
                classes.push(bundle_class(&fs, &ft, part)?);
            }
            let mut v = product_class(space, &classes)?;
            if let Some(c) = v.metadata.central.take() {
                v.metadata.central = Some(named_character(space, c)?);
            }
            Ok(v)
        }
    }
}

/// The central character of a bundle, read off its class at the space's special element.
/// On `GL_n` spaces `m(V)·rk(V) ≡ k·deg(V) mod n` is checked.
pub fn central_character(
    space: &SpaceModel,
    d: &BundleDescriptor,
) -> Result<CentralCharacter, CollectionError> {
    let t0 = construct_t0(&space.descriptor)?;
    let v = bundle_class(space, &t0, d)?;
    let ch = v
        .metadata
        .central
        .clone()
        .ok_or_else(|| CollectionError::UnsupportedBundle {
            space: space.name(),
            bundle: d.to_string(),
        })?;
    if let (Some((RootKind::A, rank, _)), Some(rk), Some(deg)) = (
        space.descriptor.flag_data(),
        v.metadata.rank,
        v.metadata.degree.as_ref(),
    ) {
        let n = rank as i64 + 1;
        let k = space.fixed_points[0].line_characters[0]
            .coords()
            .iter()
            .filter(|c| c.is_one())
            .count() as i64;
        let m = (ch.values[0] * n).to_integer();
        assert_eq!(
            (m * rk as i64 - k * deg[0]).rem_euclid(n),
            0,
            "m(V) rk(V) = k deg(V) fails for {d}"
        );
    }
    Ok(ch)
}

fn collection_on(
    d: SpaceDescriptor,
    bundles: &[BundleDescriptor],
) -> Result<Collection, CollectionError> {
    let d: SpaceDescriptor = d.to_string().parse()?;
    let space = build_space(&d)?;
    let t0 = construct_t0(&d)?;
    let classes = bundles
        .iter()
        .map(|b| bundle_class(&space, &t0, b))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Collection { space, t0, classes })
}

/// `O, O(1), …, O(n-1)` on `P^{n-1}`.
pub fn beilinson_collection(n: usize) -> Result<Collection, CollectionError> {
    let bundles: Vec<BundleDescriptor> = (0..n as i64)
        .map(|m| BundleDescriptor::Line(vec![m]))
        .collect();
    collection_on(SpaceDescriptor::Projective { n }, &bundles)
}

/// `O, π*O(1), O_F(1), O_F(1) ⊗ π*O(1)` on `F_n`; degrees are `(base, fiber)`.
pub fn hirzebruch_collection(n: u64) -> Result<Collection, CollectionError> {
    if !n.is_multiple_of(2) {
        return Err(CollectionError::NoCollection(format!("hirzebruch:{n}")));
    }
    let bundles: Vec<BundleDescriptor> = [[0, 0], [1, 0], [0, 1], [1, 1]]
        .iter()
        .map(|d| BundleDescriptor::Line(d.to_vec()))
        .collect();
    collection_on(SpaceDescriptor::Hirzebruch { n }, &bundles)
}

/// External products of the factor collections, first factor slowest.
pub fn product_collection(factors: &[Collection]) -> Result<Collection, CollectionError> {
    let models: Vec<SpaceModel> = factors.iter().map(|c| c.space.clone()).collect();
    let space = product_space(&models)?;
    let t0 = TorusElement::concat(&factors.iter().map(|c| c.t0.clone()).collect::<Vec<_>>())?;
    let mut tuples: Vec<Vec<&LocalizedClass>> = vec![Vec::new()];
    for c in factors {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                c.classes.iter().map(move |v| {
                    let mut t = t.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    let mut classes = Vec::with_capacity(tuples.len());
    for t in tuples {
        let owned: Vec<LocalizedClass> = t.into_iter().cloned().collect();
        let mut v = product_class(&space, &owned)?;
        if let Some(c) = v.metadata.central.take() {
            v.metadata.central = Some(named_character(&space, c)?);
        }
        classes.push(v);
    }
    Ok(Collection { space, t0, classes })
}

/// The standard full exceptional collection of a supported space.
pub fn standard_collection(d: &SpaceDescriptor) -> Result<Collection, CollectionError> {
    match d {
        SpaceDescriptor::Projective { n } => beilinson_collection(*n),
        SpaceDescriptor::Grassmannian { k, n } => kapranov_collection(*k, *n),
        SpaceDescriptor::QuadricEven { dim } | SpaceDescriptor::QuadricOdd { dim } => {
            quadric_collection(*dim)
        }
        SpaceDescriptor::Hirzebruch { n } => hirzebruch_collection(*n),
        SpaceDescriptor::Product(fs) => {
            let parts = fs
                .iter()
                .map(standard_collection)
                .collect::<Result<Vec<_>, _>>()?;
            product_collection(&parts)
        }
        other => Err(CollectionError::NoCollection(other.to_string())),
    }
}
