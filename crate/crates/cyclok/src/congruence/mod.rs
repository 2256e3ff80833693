//! Mod-p consequences of orthonormality: coefficient extraction, ρ-reduction,
//! line-bundle matching, slopes, hook-content ranks and central orthogonality.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

use crate::collections::{line_bundle_class, CollectionError};
use crate::cyclotomic::{Cyclotomic, CyclotomicError};
use crate::localization::{GramReport, LocalizationError, LocalizedClass, Localizer, SpaceModel};
use crate::rootdata::TorusElement;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CongruenceError {
    #[error("basis is not orthonormal: {0}")]
    NotOrthonormalBasis(String),
    #[error("coefficients do not reconstruct the class at {0}")]
    ReconstructionFailure(String),
    #[error("reduction matches several line bundles: {0:?}")]
    AmbiguousMatch(Vec<String>),
    #[error("rank {rank} of {label} is not invertible mod {modulus}")]
    NonInvertibleRank {
        label: String,
        rank: u64,
        modulus: u64,
    },
    #[error("class is not proportional to O({m}): {witness}")]
    NotProportional { m: i64, witness: String },
    #[error("coefficient {0} is not a rational integer")]
    NotInteger(String),
    #[error(transparent)]
    Cyclotomic(#[from] CyclotomicError),
    #[error(transparent)]
    Localization(#[from] LocalizationError),
    #[error(transparent)]
    Collection(#[from] CollectionError),
}

/// `a_i = H(v_i, v)` against an orthonormal basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientVector {
    pub basis: Vec<String>,
    pub coeffs: Vec<Cyclotomic>,
    pub reduced: Option<Vec<u64>>,
}

/// An orthonormal list of classes whose Gram matrix has been checked once.
#[derive(Clone, Debug)]
pub struct OrthonormalBasis<'a> {
    pub localizer: Localizer<'a>,
    pub classes: Vec<LocalizedClass>,
}

impl<'a> OrthonormalBasis<'a> {
    pub fn new(
        space: &'a SpaceModel,
        t0: &TorusElement,
        classes: &[LocalizedClass],
    ) -> Result<Self, CongruenceError> {
        let localizer = Localizer::new(space, t0)?;
        let g = localizer.gram(classes)?;
        if !g.is_identity {
            return Err(CongruenceError::NotOrthonormalBasis(
                g.violations.join("; "),
            ));
        }
        Ok(OrthonormalBasis {
            localizer,
            classes: classes.to_vec(),
        })
    }

    pub fn labels(&self) -> Vec<String> {
        self.classes.iter().map(|c| c.label.clone()).collect()
    }

    /// Coefficients of `v`, with `Σ a_i v_i = v` checked at every fixed point.
    pub fn coefficients(&self, v: &LocalizedClass) -> Result<CoefficientVector, CongruenceError> {
        let coeffs = self
            .classes
            .iter()
            .map(|b| self.localizer.pairing(b, v))
            .collect::<Result<Vec<_>, _>>()?;
        for (p, value) in v.values.iter().enumerate() {
            let rebuilt: Cyclotomic = coeffs
                .iter()
                .zip(&self.classes)
                .map(|(a, b)| a * &b.values[p])
                .sum();
            if rebuilt != *value {
                return Err(CongruenceError::ReconstructionFailure(
                    self.localizer.space.fixed_points[p].label.clone(),
                ));
            }
        }
        Ok(CoefficientVector {
            basis: self.labels(),
            coeffs,
            reduced: None,
        })
    }
}

pub fn coefficients(
    space: &SpaceModel,
    t0: &TorusElement,
    basis: &[LocalizedClass],
    v: &LocalizedClass,
) -> Result<CoefficientVector, CongruenceError> {
    OrthonormalBasis::new(space, t0, basis)?.coefficients(v)
}

/// `ρ(a_i)` for every coefficient.
pub fn reduce_coefficients(cv: &CoefficientVector, p: u64) -> Result<Vec<u64>, CongruenceError> {
    Ok(cv
        .coeffs
        .iter()
        .map(|a| a.reduce_mod_p(p))
        .collect::<Result<Vec<_>, _>>()?)
}

impl CoefficientVector {
    pub fn reduce(mut self, p: u64) -> Result<Self, CongruenceError> {
        self.reduced = Some(reduce_coefficients(&self, p)?);
        Ok(self)
    }
}

/// `Σ ρ(a_i)·rk(E_i) ≡ rk(V) mod p`.
pub fn rank_law_holds(reduced: &[u64], ranks: &[u64], rank: u64, p: u64) -> bool {
    let s: u64 = reduced
        .iter()
        .zip(ranks)
        .map(|(a, r)| a * (r % p) % p)
        .sum::<u64>()
        % p;
    s == rank % p
}

/// `Σ ρ(a_i) ≡ ±1 mod p`.
pub fn sum_of_chi_is_unit(reduced: &[u64], p: u64) -> bool {
    let s = reduced.iter().sum::<u64>() % p;
    s == 1 % p || s == p - 1
}

fn negate(v: &[u64], p: u64) -> Vec<u64> {
    v.iter().map(|x| (p - x % p) % p).collect()
}

/// Reduced coefficient vectors of line bundles against a basis; repeated reductions
/// keep the first label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineTable {
    pub p: u64,
    pub entries: Vec<(String, Vec<u64>)>,
}

impl LineTable {
    /// Line bundles with every multidegree in `0..bound` per Picard generator.
    pub fn build(
        basis: &OrthonormalBasis<'_>,
        p: u64,
        bound: i64,
    ) -> Result<Self, CongruenceError> {
        let space = basis.localizer.space;
        let t0 = &basis.localizer.t0;
        let rank = space.picard_rank();
        let mut degrees: Vec<Vec<i64>> = vec![Vec::new()];
        for _ in 0..rank {
            degrees = degrees
                .into_iter()
                .flat_map(|d| {
                    (0..bound).map(move |m| {
                        let mut d = d.clone();
                        d.push(m);
                        d
                    })
                })
                .collect();
        }
        let mut entries: Vec<(String, Vec<u64>)> = Vec::new();
        for d in degrees {
            let v = line_bundle_class(space, t0, &d)?;
            let red = reduce_coefficients(&basis.coefficients(&v)?, p)?;
            if !entries.iter().any(|(_, e)| *e == red) {
                entries.push((v.label, red));
            }
        }
        Ok(LineTable { p, entries })
    }

    pub fn lookup(&self, reduced: &[u64]) -> Result<Option<(String, i8)>, CongruenceError> {
        match_line_bundle(reduced, &self.entries, self.p)
    }
}

/// The unique line bundle whose reduction equals `± reduced`.
pub fn match_line_bundle(
    reduced: &[u64],
    lines: &[(String, Vec<u64>)],
    p: u64,
) -> Result<Option<(String, i8)>, CongruenceError> {
    if reduced.iter().all(|x| x % p == 0) {
        return Ok(None);
    }
    let neg = negate(reduced, p);
    let mut hits = Vec::new();
    for (label, l) in lines {
        if l.as_slice() == reduced {
            hits.push((label.clone(), 1i8));
        } else if *l == neg {
            hits.push((label.clone(), -1i8));
        }
    }
    match hits.len() {
        0 => Ok(None),
        1 => Ok(hits.pop()),
        _ => Err(CongruenceError::AmbiguousMatch(
            hits.into_iter().map(|(l, _)| l).collect(),
        )),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlopeReport {
    pub modulus: u64,
    /// `deg · rk^{-1} mod p^k` per member.
    pub slopes: Vec<u64>,
    pub complete: bool,
    /// Pairs of members with equal slopes.
    pub collisions: Vec<(String, String)>,
    /// Members with `rk ≢ ±1 mod p`.
    pub rank_violations: Vec<String>,
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let g = (a as i64).extended_gcd(&(m as i64));
    (g.gcd == 1).then(|| g.x.rem_euclid(m as i64) as u64)
}

/// Slopes `deg/rk mod p^k` of `(label, rank, degree)` members and whether they form a
/// complete residue system.
pub fn slope_residue_check(
    members: &[(String, u64, i64)],
    p: u64,
    k: u32,
) -> Result<SlopeReport, CongruenceError> {
    let modulus = p.pow(k);
    let mut slopes = Vec::with_capacity(members.len());
    let mut rank_violations = Vec::new();
    for (label, rank, deg) in members {
        let inv = mod_inverse(rank % modulus, modulus).ok_or_else(|| {
            CongruenceError::NonInvertibleRank {
                label: label.clone(),
                rank: *rank,
                modulus,
            }
        })?;
        slopes.push((deg.rem_euclid(modulus as i64) as u64) * inv % modulus);
        if rank % p != 1 % p && rank % p != p - 1 {
            rank_violations.push(label.clone());
        }
    }
    let mut collisions = Vec::new();
    for i in 0..slopes.len() {
        for j in i + 1..slopes.len() {
            if slopes[i] == slopes[j] {
                collisions.push((members[i].0.clone(), members[j].0.clone()));
            }
        }
    }
    let complete = collisions.is_empty() && slopes.len() as u64 == modulus;
    Ok(SlopeReport {
        modulus,
        slopes,
        complete,
        collisions,
        rank_violations,
    })
}

/// `dim Σ^λ C^k = ∏_{x∈λ} (k + c(x)) / h(x)`.
pub fn hook_content_rank(lambda: &[u32], k: usize) -> u64 {
    let parts: Vec<i64> = lambda
        .iter()
        .copied()
        .filter(|&x| x > 0)
        .map(i64::from)
        .collect();
    assert!(
        parts.len() <= k,
        "partition {lambda:?} has more than {k} parts"
    );
    let conj = |j: i64| parts.iter().filter(|&&x| x > j).count() as i64;
    let mut q = BigRational::one();
    for (i, &row) in parts.iter().enumerate() {
        let i = i as i64;
        for j in 0..row {
            let content = j - i;
            let hook = (row - j - 1) + (conj(j) - i - 1) + 1;
            q *= BigRational::new(BigInt::from(k as i64 + content), BigInt::from(hook));
        }
    }
    assert!(q.is_integer(), "hook-content product {q} is not an integer");
    q.to_integer().to_u64().expect("rank fits in u64")
}

pub fn coprime_to(n: u64, p: u64) -> bool {
    n.gcd(&p) == 1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralReport {
    /// Character label and member indices, in order of first appearance.
    pub blocks: Vec<(String, Vec<usize>)>,
    /// Sizes sorted in decreasing order.
    pub block_sizes: Vec<usize>,
    /// `(i, j, H(v_i, v_j))` for members of distinct characters with nonzero pairing.
    pub violations: Vec<(usize, usize, Cyclotomic)>,
    pub passed: bool,
}

/// Every pairing between classes of different central characters vanishes.
pub fn central_orthogonality_check(
    space: &SpaceModel,
    t0: &TorusElement,
    classes: &[LocalizedClass],
) -> Result<CentralReport, CongruenceError> {
    let loc = Localizer::new(space, t0)?;
    let mut blocks: Vec<(String, Vec<usize>)> = Vec::new();
    let mut keys = Vec::new();
    for (i, c) in classes.iter().enumerate() {
        let ch = c.metadata.central.clone().ok_or_else(|| {
            CongruenceError::Collection(CollectionError::UnsupportedBundle {
                space: space.name(),
                bundle: c.label.clone(),
            })
        })?;
        match keys.iter().position(|k| *k == ch) {
            Some(b) => blocks[b].1.push(i),
            None => {
                blocks.push((ch.label(), vec![i]));
                keys.push(ch);
            }
        }
    }
    let mut violations = Vec::new();
    for (bi, (_, a)) in blocks.iter().enumerate() {
        for (_, b) in blocks.iter().skip(bi + 1) {
            for &i in a {
                for &j in b {
                    let h = loc.pairing(&classes[i], &classes[j])?;
                    if !h.is_zero() {
                        violations.push((i, j, h));
                    }
                    let h = loc.pairing(&classes[j], &classes[i])?;
                    if !h.is_zero() {
                        violations.push((j, i, h));
                    }
                }
            }
        }
    }
    let mut block_sizes: Vec<usize> = blocks.iter().map(|(_, v)| v.len()).collect();
    block_sizes.sort_unstable_by(|a, b| b.cmp(a));
    Ok(CentralReport {
        passed: violations.is_empty(),
        blocks,
        block_sizes,
        violations,
    })
}

/// `a(V)` with `v = a(V)·v(O(m))` on `P^{n-1}`.
pub fn decompose_central(
    space: &SpaceModel,
    t0: &TorusElement,
    v: &LocalizedClass,
    m: i64,
) -> Result<BigInt, CongruenceError> {
    let loc = Localizer::new(space, t0)?;
    let line = line_bundle_class(space, t0, &[m])?;
    let a = loc.pairing(&line, v)?;
    for (p, (x, l)) in v.values.iter().zip(&line.values).enumerate() {
        if *x != &a * l {
            return Err(CongruenceError::NotProportional {
                m,
                witness: format!("{}: {} vs {}·{}", space.fixed_points[p].label, x, a, l),
            });
        }
    }
    a.to_integer()
        .ok_or_else(|| CongruenceError::NotInteger(a.to_string()))
}

/// The reduced Gram matrix `ρ(H(v_i, v_j))`.
pub fn reduced_gram(g: &GramReport, p: u64) -> Result<Vec<Vec<u64>>, CongruenceError> {
    g.entries
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| x.reduce_mod_p(p).map_err(CongruenceError::from))
                .collect()
        })
        .collect()
}

/// Member indices grouped by central-character label.
pub fn group_by_character(classes: &[LocalizedClass]) -> BTreeMap<String, Vec<usize>> {
    let mut out: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for (i, c) in classes.iter().enumerate() {
        let key = c
            .metadata
            .central
            .as_ref()
            .map_or_else(|| "unknown".to_string(), |ch| ch.label());
        out.entry(key).or_default().push(i);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collections::{beilinson_collection, kapranov_collection, quadric_collection};

    #[test]
    fn hook_content_examples() {
        assert_eq!(hook_content_rank(&[], 3), 1);
        assert_eq!(hook_content_rank(&[1], 2), 2);
        assert_eq!(hook_content_rank(&[2, 1], 2), 2);
        assert_eq!(hook_content_rank(&[2, 1], 3), 8);
        assert_eq!(hook_content_rank(&[3], 3), 10);
    }

    #[test]
    fn basis_member_coefficients() {
        let c = kapranov_collection(2, 4).unwrap();
        let b = OrthonormalBasis::new(&c.space, &c.t0, &c.classes).unwrap();
        let cv = b.coefficients(&c.classes[3]).unwrap();
        for (i, a) in cv.coeffs.iter().enumerate() {
            assert_eq!(a.is_one(), i == 3);
            assert_eq!(a.is_zero(), i != 3);
        }
        let z = Cyclotomic::zeta(4);
        let cv = b.coefficients(&c.classes[0].scale(&z)).unwrap();
        assert_eq!(cv.coeffs[0], z);
    }

    #[test]
    fn periodicity_coefficient() {
        let c = beilinson_collection(4).unwrap();
        let b = OrthonormalBasis::new(&c.space, &c.t0, &c.classes).unwrap();
        let n = c.t0.order() as i64;
        let v = line_bundle_class(&c.space, &c.t0, &[n]).unwrap();
        let cv = b.coefficients(&v).unwrap();
        assert!(cv.coeffs[0].is_one());
        assert!(cv.coeffs[1..].iter().all(Cyclotomic::is_zero));
    }

    #[test]
    fn doubling_reduces_to_zero() {
        let c = beilinson_collection(4).unwrap();
        let b = OrthonormalBasis::new(&c.space, &c.t0, &c.classes).unwrap();
        let v = c.classes[2].add(&c.classes[2]);
        let red = b
            .coefficients(&v)
            .unwrap()
            .reduce(2)
            .unwrap()
            .reduced
            .unwrap();
        assert_eq!(red, vec![0, 0, 0, 0]);
        let table = LineTable::build(&b, 2, 4).unwrap();
        assert_eq!(table.lookup(&red).unwrap(), None);
        let red2 = reduce_coefficients(&b.coefficients(&c.classes[2]).unwrap(), 2).unwrap();
        assert_eq!(table.lookup(&red2).unwrap(), Some(("O(2)".to_string(), 1)));
    }

    #[test]
    fn non_orthonormal_basis_is_rejected() {
        let c = beilinson_collection(3).unwrap();
        let dup = vec![c.classes[0].clone(), c.classes[0].clone()];
        assert!(matches!(
            OrthonormalBasis::new(&c.space, &c.t0, &dup),
            Err(CongruenceError::NotOrthonormalBasis(_))
        ));
    }

    #[test]
    fn spinor_has_no_line_match() {
        let c = quadric_collection(4).unwrap();
        let b = OrthonormalBasis::new(&c.space, &c.t0, &c.classes).unwrap();
        let table = LineTable::build(&b, 2, 4).unwrap();
        let red = reduce_coefficients(&b.coefficients(&c.classes[1]).unwrap(), 2).unwrap();
        assert_eq!(table.lookup(&red).unwrap(), None);
    }

    #[test]
    fn slopes() {
        let members: Vec<(String, u64, i64)> = (0..4).map(|m| (format!("O({m})"), 1, m)).collect();
        let rep = slope_residue_check(&members, 2, 2).unwrap();
        assert!(rep.complete);
        let mut bad = members.clone();
        bad[3].2 = 1;
        let rep = slope_residue_check(&bad, 2, 2).unwrap();
        assert!(!rep.complete);
        assert_eq!(
            rep.collisions,
            vec![("O(1)".to_string(), "O(3)".to_string())]
        );
        bad[0].1 = 2;
        assert!(matches!(
            slope_residue_check(&bad, 2, 2),
            Err(CongruenceError::NonInvertibleRank { .. })
        ));
    }

    #[test]
    fn decompose_sums_of_periodic_lines() {
        let c = beilinson_collection(3).unwrap();
        let n = c.t0.order() as i64;
        let a = line_bundle_class(&c.space, &c.t0, &[1]).unwrap();
        let b = line_bundle_class(&c.space, &c.t0, &[1 + n]).unwrap();
        assert_eq!(
            decompose_central(&c.space, &c.t0, &a, 1).unwrap(),
            BigInt::from(1)
        );
        assert_eq!(
            decompose_central(&c.space, &c.t0, &a.add(&b), 1).unwrap(),
            BigInt::from(2)
        );
        assert!(matches!(
            decompose_central(&c.space, &c.t0, &a, 2),
            Err(CongruenceError::NotProportional { .. })
        ));
    }

    #[test]
    fn g25_blocks() {
        let c = kapranov_collection(2, 5).unwrap();
        let rep = central_orthogonality_check(&c.space, &c.t0, &c.classes).unwrap();
        assert!(rep.passed);
        assert_eq!(rep.block_sizes, vec![2; 5]);
        assert_eq!(group_by_character(&c.classes).len(), 5);
    }

    #[test]
    fn rank_law_and_sum() {
        assert!(rank_law_holds(&[1, 0, 1], &[1, 2, 3], 4, 2));
        assert!(sum_of_chi_is_unit(&[0, 2, 0], 3));
        assert!(!sum_of_chi_is_unit(&[1, 1, 1], 3));
        assert!(coprime_to(10, 3));
    }
}
