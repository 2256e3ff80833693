use num_traits::One;

use super::standard::{named_character, Collection};
use super::CollectionError;
use crate::congruence::hook_content_rank;
use crate::cyclotomic::Cyclotomic;
use crate::localization::{build_space, ClassMetadata, LocalizedClass, SpaceModel};
use crate::rootdata::{construct_t0, RootKind, SpaceDescriptor, TorusElement, Weight};

/// `h_0, …, h_d` of the given values.
fn complete_homogeneous(values: &[Cyclotomic], d: usize) -> Vec<Cyclotomic> {
    let mut h = vec![Cyclotomic::zero(); d + 1];
    h[0] = Cyclotomic::one();
    for x in values {
        for m in 1..=d {
            let next = &h[m] + &(x * &h[m - 1]);
            h[m] = next;
        }
    }
    h
}

/// Determinant by cofactor expansion along the first row.
fn determinant(m: &[Vec<Cyclotomic>]) -> Cyclotomic {
    match m.len() {
        0 => Cyclotomic::one(),
        1 => m[0][0].clone(),
        n => {
            let mut acc = Cyclotomic::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Cyclotomic>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != j)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][j] * &determinant(&minor);
                acc = if j % 2 == 0 { acc + term } else { acc - term };
            }
            acc
        }
    }
}

/// `s_λ(values)` as the Jacobi–Trudi determinant `det(h_{λ_i - i + j})`.
pub fn schur_evaluate(lambda: &[u32], values: &[Cyclotomic]) -> Cyclotomic {
    let parts: Vec<i64> = lambda
        .iter()
        .copied()
        .filter(|&x| x > 0)
        .map(i64::from)
        .collect();
    let l = parts.len();
    if l == 0 {
        return Cyclotomic::one();
    }
    let top = (parts[0] as usize) + l;
    let h = complete_homogeneous(values, top);
    let matrix: Vec<Vec<Cyclotomic>> = (0..l)
        .map(|i| {
            (0..l)
                .map(|j| {
                    let d = parts[i] - i as i64 + j as i64;
                    if d < 0 {
                        Cyclotomic::zero()
                    } else {
                        h[d as usize].clone()
                    }
                })
                .collect()
        })
        .collect();
    determinant(&matrix)
}

/// Partitions in the `(n−k)×k` box, as length-`k` tuples in increasing lexicographic order.
pub fn box_partitions(k: usize, n: usize) -> Vec<Vec<u32>> {
    fn rec(k: usize, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        for x in 0..=max {
            prefix.push(x);
            rec(k, x, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, (n - k) as u32, &mut Vec::new(), &mut out);
    out
}

pub(crate) fn schur_label(lambda: &[u32]) -> String {
    let parts: Vec<String> = lambda
        .iter()
        .filter(|&&x| x > 0)
        .map(|x| x.to_string())
        .collect();
    format!("schur[{}]", parts.join(","))
}

/// Indices `S` of the tautological characters at each fixed point of a type-A space.
fn subsets(space: &SpaceModel) -> Option<Vec<Vec<usize>>> {
    let d = &space.factors.first()?.descriptor;
    if space.factors.len() != 1 || d.flag_data().map(|f| f.0) != Some(RootKind::A) {
        return None;
    }
    Some(
        space
            .fixed_points
            .iter()
            .map(|p| {
                p.line_characters[0]
                    .coords()
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| c.is_one())
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect(),
    )
}

/// `v_S = s_λ(ε_i(t0) : i ∈ S)` for `Σ^λ U` on a Grassmannian or projective space.
pub fn schur_class(
    space: &SpaceModel,
    t0: &TorusElement,
    lambda: &[u32],
) -> Result<LocalizedClass, CollectionError> {
    let unsupported = || CollectionError::UnsupportedBundle {
        space: space.name(),
        bundle: schur_label(lambda),
    };
    let subsets = subsets(space).ok_or_else(unsupported)?;
    let k = subsets[0].len();
    let parts: Vec<u32> = lambda.iter().copied().filter(|&x| x > 0).collect();
    if parts.len() > k || lambda.windows(2).any(|w| w[0] < w[1]) {
        return Err(unsupported());
    }
    let mut values = Vec::with_capacity(subsets.len());
    for s in &subsets {
        let xs = s
            .iter()
            .map(|&i| t0.evaluate(&Weight::unit(space.torus_rank, i)))
            .collect::<Result<Vec<_>, _>>()?;
        values.push(schur_evaluate(&parts, &xs));
    }
    let rank = hook_content_rank(&parts, k);
    let size: u64 = parts.iter().map(|&x| u64::from(x)).sum();
    let mut highest = Weight::zero(space.torus_rank);
    for (&i, &x) in subsets[0].iter().zip(&parts) {
        highest = &highest + &Weight::unit(space.torus_rank, i).scale(i64::from(x).into());
    }
    let central = named_character(space, space.central_character_of(&highest)?)?;
    let metadata = ClassMetadata {
        rank: Some(rank),
        central: Some(central),
        degree: Some(vec![(size * rank / k as u64) as i64]),
        twist: None,
    };
    Ok(LocalizedClass::new(
        space.name(),
        schur_label(lambda),
        values,
        metadata,
    ))
}

/// `Σ^λ U` for `λ` in the `(n−k)×k` box on `G(k,n)`, ordered by [`box_partitions`].
pub fn kapranov_collection(k: usize, n: usize) -> Result<Collection, CollectionError> {
    let d = if k == 1 {
        SpaceDescriptor::Projective { n }
    } else {
        SpaceDescriptor::Grassmannian { k, n }
    };
    let d: SpaceDescriptor = d.to_string().parse()?;
    let space = build_space(&d)?;
    let t0 = construct_t0(&d)?;
    let classes = box_partitions(k, n)
        .iter()
        .map(|l| schur_class(&space, &t0, l))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Collection { space, t0, classes })
}
