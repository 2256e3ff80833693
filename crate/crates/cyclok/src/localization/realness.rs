use super::class::LocalizedClass;
use super::space::SpaceModel;
use super::LocalizationError;
use crate::rootdata::{find_inverting_element, SignedPerm, TorusElement, Weight};

/// A Weyl element `w` with `w·t0 = t0^{-1}` and the induced map on fixed points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Involution {
    pub element: SignedPerm,
    /// `point_map[p]` is the index of `w·p`.
    pub point_map: Vec<usize>,
}

fn sorted(mut ws: Vec<Weight>) -> Vec<Weight> {
    ws.sort();
    ws
}

/// Find `w` inverting `t0` and match each point `p` with the point whose tangent weights
/// and line characters are the `w`-images of those at `p`.
pub fn involution(space: &SpaceModel, t0: &TorusElement) -> Result<Involution, LocalizationError> {
    let element = find_inverting_element(t0, &space.weyl_blocks())
        .ok_or_else(|| LocalizationError::NoInvolution(space.name()))?;
    let keys: Vec<(Vec<Weight>, &Vec<Weight>)> = space
        .fixed_points
        .iter()
        .map(|p| (sorted(p.tangent_weights.clone()), &p.line_characters))
        .collect();
    let mut point_map = Vec::with_capacity(keys.len());
    for p in &space.fixed_points {
        let tangent = sorted(
            p.tangent_weights
                .iter()
                .map(|w| element.act_weight(w))
                .collect(),
        );
        let lines: Vec<Weight> = p
            .line_characters
            .iter()
            .map(|w| element.act_weight(w))
            .collect();
        let q = keys
            .iter()
            .position(|(t, l)| *t == tangent && **l == lines)
            .ok_or_else(|| {
                LocalizationError::NoInvolution(format!(
                    "{}: image of {} is not a fixed point",
                    space.name(),
                    p.label
                ))
            })?;
        point_map.push(q);
    }
    Ok(Involution { element, point_map })
}

/// `conj(v_{w·p}) = v_p` for every fixed point.
pub fn realness_check(
    space: &SpaceModel,
    inv: &Involution,
    v: &LocalizedClass,
) -> Result<bool, LocalizationError> {
    if v.values.len() != space.fixed_points.len() || v.space != space.name() {
        return Err(LocalizationError::SpaceMismatch {
            space: space.name(),
            class: v.space.clone(),
        });
    }
    Ok(inv
        .point_map
        .iter()
        .enumerate()
        .all(|(p, &q)| v.values[q].conjugate() == v.values[p]))
}
