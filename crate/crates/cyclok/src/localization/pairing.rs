use num_rational::Rational64;
use num_traits::Zero;

use super::class::LocalizedClass;
use super::space::SpaceModel;
use super::LocalizationError;
use crate::cyclotomic::Cyclotomic;
use crate::rootdata::{frac, r, StarReport, TorusElement};

/// (⋆) checked point by point: no tangent weight is trivial on `t0` and
/// `det(t0, T_pX) = (-1)^{dim X}`. The direct form has no separate power condition, so
/// `weight_power_check` records that every tangent weight could be evaluated.
pub fn verify_star_direct(space: &SpaceModel, t0: &TorusElement) -> StarReport {
    let mut violations = Vec::new();
    let mut failed_roots = Vec::new();
    let mut weight_power_check = true;
    let mut determinant_sign_check = true;
    let sign = frac(r(space.dimension as i64, 2));
    for p in &space.fixed_points {
        let mut det = Rational64::zero();
        let mut evaluable = true;
        for w in &p.tangent_weights {
            match t0.exponent_of(w) {
                Ok(e) => {
                    if e.is_zero() {
                        violations
                            .push(format!("{}: tangent weight {w} is trivial on t0", p.label));
                        if !failed_roots.contains(w) {
                            failed_roots.push(w.clone());
                        }
                    }
                    det += e;
                }
                Err(err) => {
                    evaluable = false;
                    weight_power_check = false;
                    violations.push(format!("{}: {err}", p.label));
                }
            }
        }
        if evaluable && frac(det) != sign {
            determinant_sign_check = false;
            violations.push(format!(
                "{}: det(t0) = exp(2 pi i {}) but (-1)^{} is required",
                p.label,
                frac(det),
                space.dimension
            ));
        }
    }
    StarReport {
        passed: violations.is_empty(),
        failed_roots,
        weight_power_check,
        determinant_sign_check,
        order: t0.order(),
        violations,
    }
}

/// Precomputed Lefschetz coefficients for one `(space, t0)` pair.
#[derive(Clone, Debug)]
pub struct Localizer<'a> {
    pub space: &'a SpaceModel,
    pub t0: TorusElement,
    pub coefficients: Vec<Cyclotomic>,
}

impl<'a> Localizer<'a> {
    pub fn new(space: &'a SpaceModel, t0: &TorusElement) -> Result<Self, LocalizationError> {
        let mut coefficients = Vec::with_capacity(space.fixed_points.len());
        let mut singular = Vec::new();
        for p in &space.fixed_points {
            let mut denom = Cyclotomic::one();
            for w in &p.tangent_weights {
                let e = t0.exponent_of(w)?;
                if e.is_zero() {
                    singular.push(format!("{} (weight {w})", p.label));
                }
                denom = denom * (Cyclotomic::one() - t0.evaluate(w)?);
            }
            if singular.is_empty() {
                coefficients.push(denom.inverse()?);
            }
        }
        if !singular.is_empty() {
            return Err(LocalizationError::SingularLocalization(singular.join(", ")));
        }
        Ok(Localizer {
            space,
            t0: t0.clone(),
            coefficients,
        })
    }

    fn check(&self, v: &LocalizedClass) -> Result<(), LocalizationError> {
        if v.space != self.space.name() || v.values.len() != self.space.fixed_points.len() {
            return Err(LocalizationError::SpaceMismatch {
                space: self.space.name(),
                class: v.space.clone(),
            });
        }
        Ok(())
    }

    /// `H(v, w) = Σ_p c_p · conj(v_p) · w_p`.
    pub fn pairing(
        &self,
        v: &LocalizedClass,
        w: &LocalizedClass,
    ) -> Result<Cyclotomic, LocalizationError> {
        self.check(v)?;
        self.check(w)?;
        Ok(self
            .coefficients
            .iter()
            .zip(v.values.iter().zip(&w.values))
            .map(|(c, (a, b))| c * &(a.conjugate() * b))
            .sum())
    }

    /// `Σ_p c_p · v_p`.
    pub fn euler_characteristic(
        &self,
        v: &LocalizedClass,
    ) -> Result<Cyclotomic, LocalizationError> {
        self.check(v)?;
        Ok(self
            .coefficients
            .iter()
            .zip(&v.values)
            .map(|(c, a)| c * a)
            .sum())
    }

    pub fn gram(&self, classes: &[LocalizedClass]) -> Result<GramReport, LocalizationError> {
        let n = classes.len();
        let mut entries = Vec::with_capacity(n);
        for v in classes {
            let row = classes
                .iter()
                .map(|w| self.pairing(v, w))
                .collect::<Result<Vec<_>, _>>()?;
            entries.push(row);
        }
        Ok(GramReport::from_entries(
            entries,
            classes.iter().map(|c| c.label.clone()).collect(),
        ))
    }
}

/// Pairwise pairings with Hermitian and identity verdicts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramReport {
    pub labels: Vec<String>,
    pub entries: Vec<Vec<Cyclotomic>>,
    pub hermitian: bool,
    pub is_identity: bool,
    pub violations: Vec<String>,
}

impl GramReport {
    pub fn from_entries(entries: Vec<Vec<Cyclotomic>>, labels: Vec<String>) -> Self {
        let n = entries.len();
        let mut violations = Vec::new();
        let mut hermitian = true;
        let mut is_identity = true;
        for i in 0..n {
            for j in 0..n {
                let e = &entries[i][j];
                if j >= i && *e != entries[j][i].conjugate() {
                    hermitian = false;
                    violations.push(format!("H({i},{j}) = {e} is not conj(H({j},{i}))"));
                }
                let want = if i == j {
                    Cyclotomic::one()
                } else {
                    Cyclotomic::zero()
                };
                if *e != want {
                    is_identity = false;
                    violations.push(format!("H({i},{j}) = {e}"));
                }
            }
        }
        GramReport {
            labels,
            entries,
            hermitian,
            is_identity,
            violations,
        }
    }
}

pub fn lefschetz_coefficients(
    space: &SpaceModel,
    t0: &TorusElement,
) -> Result<Vec<Cyclotomic>, LocalizationError> {
    Ok(Localizer::new(space, t0)?.coefficients)
}

pub fn euler_pairing(
    space: &SpaceModel,
    t0: &TorusElement,
    v: &LocalizedClass,
    w: &LocalizedClass,
) -> Result<Cyclotomic, LocalizationError> {
    Localizer::new(space, t0)?.pairing(v, w)
}

pub fn euler_characteristic(
    space: &SpaceModel,
    t0: &TorusElement,
    v: &LocalizedClass,
) -> Result<Cyclotomic, LocalizationError> {
    Localizer::new(space, t0)?.euler_characteristic(v)
}

pub fn gram_matrix(
    space: &SpaceModel,
    t0: &TorusElement,
    classes: &[LocalizedClass],
) -> Result<GramReport, LocalizationError> {
    Localizer::new(space, t0)?.gram(classes)
}
