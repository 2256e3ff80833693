use num_rational::Rational64;

use super::line::raw_line_class;
use super::standard::{named_character, Collection};
use super::{CollectionError, SpinorSign};
use crate::localization::{build_space, ClassMetadata, LocalizedClass, Localizer, SpaceModel};
use crate::rootdata::{construct_t0, r, RootKind, SpaceDescriptor, TorusElement, Weight};

fn quadric_kind(space: &SpaceModel) -> Option<RootKind> {
    match space.descriptor {
        SpaceDescriptor::QuadricEven { .. } => Some(RootKind::D),
        SpaceDescriptor::QuadricOdd { .. } => Some(RootKind::B),
        _ => None,
    }
}

pub(crate) fn spinor_label(sign: Option<SpinorSign>) -> &'static str {
    match sign {
        Some(SpinorSign::Plus) => "spinor+",
        Some(SpinorSign::Minus) => "spinor-",
        None => "spinor",
    }
}

/// Half-spin weights `(s_1, …, s_k)/2` with `s_a = sign of the point`, keeping an even
/// (`S+`) or odd (`S-`) number of minus signs on even quadrics.
fn spinor_weights(space: &SpaceModel, point: usize, sign: Option<SpinorSign>) -> Vec<Weight> {
    let k = space.torus_rank;
    let mu = &space.fixed_points[point].line_characters[0];
    let mut out = Vec::new();
    for mask in 0u32..(1 << k) {
        let nu = Weight(
            (0..k)
                .map(|i| {
                    if mask >> i & 1 == 1 {
                        r(-1, 2)
                    } else {
                        r(1, 2)
                    }
                })
                .collect(),
        );
        if nu.dot(mu) != r(1, 2) {
            continue;
        }
        let odd = mask.count_ones() % 2 == 1;
        match sign {
            Some(SpinorSign::Plus) if odd => continue,
            Some(SpinorSign::Minus) if !odd => continue,
            _ => {}
        }
        out.push(nu);
    }
    out
}

/// Twists tried in order `0, 1, -1, 2, -2, …` up to the order of `t0`.
fn twist_candidates(order: u64) -> impl Iterator<Item = i64> {
    let bound = order as i64;
    (0..=bound).flat_map(|m| if m == 0 { vec![0] } else { vec![m, -m] })
}

/// The spinor class with an unnamed central character.
pub(crate) fn raw_spinor_class(
    space: &SpaceModel,
    t0: &TorusElement,
    sign: Option<SpinorSign>,
) -> Result<LocalizedClass, CollectionError> {
    let kind = quadric_kind(space);
    let unsupported = || CollectionError::UnsupportedBundle {
        space: space.name(),
        bundle: spinor_label(sign).into(),
    };
    match (kind, sign) {
        (Some(RootKind::D), Some(_)) | (Some(RootKind::B), None) => {}
        _ => return Err(unsupported()),
    }
    let loc = Localizer::new(space, t0)?;
    let weights: Vec<Vec<Weight>> = (0..space.fixed_points.len())
        .map(|p| spinor_weights(space, p, sign))
        .collect();
    let rank = weights[0].len() as u64;
    let base =
        space.class_from_weights(t0, spinor_label(sign), &weights, ClassMetadata::default())?;
    if !loc.pairing(&base, &base)?.is_one() {
        return Err(CollectionError::NormalizationFailure(format!(
            "{} on {}: H(v,v) = {}",
            spinor_label(sign),
            space.name(),
            loc.pairing(&base, &base)?
        )));
    }
    let mut partners = (0..space.dimension as i64)
        .map(|m| raw_line_class(space, t0, &[m]))
        .collect::<Result<Vec<_>, _>>()?;
    if sign == Some(SpinorSign::Minus) {
        partners.push(raw_spinor_class(space, t0, Some(SpinorSign::Plus))?);
    }
    for m in twist_candidates(t0.order()) {
        let line = raw_line_class(space, t0, &[m])?;
        let v = base.tensor(&line);
        let mut orthogonal = true;
        for w in &partners {
            if !loc.pairing(w, &v)?.is_zero() {
                orthogonal = false;
                break;
            }
        }
        if orthogonal {
            let highest = &weights[0][0]
                + &space.fixed_points[0].line_characters[0].scale(Rational64::from_integer(m));
            let central = space.central_character_of(&highest)?;
            return Ok(LocalizedClass::new(
                space.name(),
                spinor_label(sign),
                v.values,
                ClassMetadata {
                    rank: Some(rank),
                    central: Some(central),
                    degree: None,
                    twist: Some(m),
                },
            ));
        }
    }
    Err(CollectionError::NormalizationFailure(format!(
        "{} on {}: no twist is orthogonal to the line bundles",
        spinor_label(sign),
        space.name()
    )))
}

/// The spinor bundle `S+`, `S-` (even quadrics) or `S` (odd quadrics), twisted by the
/// first `O(m)` that makes it orthogonal to `O, …, O(dim-1)` (and to `S+` for `S-`).
/// The twist is recorded in the metadata.
pub fn spinor_class(
    space: &SpaceModel,
    t0: &TorusElement,
    sign: Option<SpinorSign>,
) -> Result<LocalizedClass, CollectionError> {
    let mut v = raw_spinor_class(space, t0, sign)?;
    if let Some(c) = v.metadata.central.take() {
        v.metadata.central = Some(named_character(space, c)?);
    }
    Ok(v)
}

/// `(O, S+, S-, O(1), …, O(2k-3))` on `Q^{2k-2}` and `(O, S, O(1), …, O(2k-2))` on
/// `Q^{2k-1}`.
pub fn quadric_collection(dim: usize) -> Result<Collection, CollectionError> {
    let d = if dim.is_multiple_of(2) {
        SpaceDescriptor::QuadricEven { dim }
    } else {
        SpaceDescriptor::QuadricOdd { dim }
    };
    let d: SpaceDescriptor = d.to_string().parse()?;
    let space = build_space(&d)?;
    let t0 = construct_t0(&d)?;
    let line = |m: i64| super::line_bundle_class(&space, &t0, &[m]);
    let mut classes = vec![line(0)?];
    if dim.is_multiple_of(2) {
        let plus = spinor_class(&space, &t0, Some(SpinorSign::Plus))?;
        let minus = spinor_class(&space, &t0, Some(SpinorSign::Minus))?;
        let chi0 = line(1)?
            .metadata
            .central
            .expect("line classes carry a character");
        let (cp, cm) = (
            plus.metadata.central.clone(),
            minus.metadata.central.clone(),
        );
        debug_assert_eq!(cp.map(|c| c.mul(&chi0)), cm);
        classes.push(plus);
        classes.push(minus);
    } else {
        classes.push(spinor_class(&space, &t0, None)?);
    }
    for m in 1..dim as i64 {
        classes.push(line(m)?);
    }
    Ok(Collection { space, t0, classes })
}
