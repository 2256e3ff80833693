use super::standard::named_character;
use super::CollectionError;
use crate::localization::{ClassMetadata, FactorInfo, LocalizedClass, SpaceModel};
use crate::rootdata::{SpinCoordinate, TorusElement, Weight};

/// The part of `t0` living on one factor's coordinates.
pub fn restrict_t0(
    t0: &TorusElement,
    factor: &FactorInfo,
) -> Result<TorusElement, CollectionError> {
    let exps = t0.exponents()[factor.coords.clone()].to_vec();
    let spin = match (&factor.spin_block, t0.spin()) {
        (Some(b), Some(s)) => Some(SpinCoordinate {
            exponent: s.exponent,
            start: b.start - factor.coords.start,
            len: b.len(),
        }),
        _ => None,
    };
    Ok(TorusElement::with_spin(exps, spin)?)
}

pub(crate) fn line_label(degrees: &[i64]) -> String {
    let ds: Vec<String> = degrees.iter().map(|d| d.to_string()).collect();
    format!("O({})", ds.join(","))
}

/// `v_p = χ_p(t0)` for the line bundle with the given multidegree, `χ_p` its fiber
/// character at `p`.
pub fn line_bundle_class(
    space: &SpaceModel,
    t0: &TorusElement,
    degrees: &[i64],
) -> Result<LocalizedClass, CollectionError> {
    let mut v = raw_line_class(space, t0, degrees)?;
    if let Some(c) = v.metadata.central.take() {
        v.metadata.central = Some(named_character(space, c)?);
    }
    Ok(v)
}

/// [`line_bundle_class`] with an unnamed central character.
pub(crate) fn raw_line_class(
    space: &SpaceModel,
    t0: &TorusElement,
    degrees: &[i64],
) -> Result<LocalizedClass, CollectionError> {
    if degrees.len() != space.picard_rank() {
        return Err(CollectionError::UnsupportedTwist {
            space: space.name(),
            twist: line_label(degrees),
        });
    }
    let weights = (0..space.fixed_points.len())
        .map(|p| Ok(vec![space.line_weight(p, degrees)?]))
        .collect::<Result<Vec<Vec<Weight>>, CollectionError>>()?;
    let central = space.central_character_of(&weights[0][0])?;
    let metadata = ClassMetadata {
        rank: Some(1),
        central: Some(central),
        degree: Some(degrees.to_vec()),
        twist: None,
    };
    Ok(space.class_from_weights(t0, line_label(degrees), &weights, metadata)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::Cyclotomic;
    use crate::localization::build_space;
    use crate::rootdata::construct_t0;

    fn setup(s: &str) -> (SpaceModel, TorusElement) {
        let d = s.parse().unwrap();
        (build_space(&d).unwrap(), construct_t0(&d).unwrap())
    }

    #[test]
    fn o1_on_projective_is_coordinate_character() {
        let (s, t) = setup("projective:4");
        let v = line_bundle_class(&s, &t, &[1]).unwrap();
        for (i, x) in v.values.iter().enumerate() {
            assert_eq!(*x, t.evaluate(&Weight::unit(4, i)).unwrap());
        }
        assert_eq!(v.metadata.rank, Some(1));
    }

    #[test]
    fn trivial_and_periodic() {
        let (s, t) = setup("projective:5");
        let o = line_bundle_class(&s, &t, &[0]).unwrap();
        assert!(o.values.iter().all(Cyclotomic::is_one));
        let n = t.order() as i64;
        assert_eq!(line_bundle_class(&s, &t, &[n]).unwrap().values, o.values);
        assert_eq!(
            line_bundle_class(&s, &t, &[n + 2]).unwrap().values,
            line_bundle_class(&s, &t, &[2]).unwrap().values
        );
    }

    #[test]
    fn wrong_arity_is_rejected() {
        let (s, t) = setup("hirzebruch:2");
        assert!(matches!(
            line_bundle_class(&s, &t, &[1]),
            Err(CollectionError::UnsupportedTwist { .. })
        ));
        assert!(line_bundle_class(&s, &t, &[1, 1]).is_ok());
    }
}
