use std::fmt;
use std::ops::Range;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::Zero;

use super::weight::{frac, r, Weight};
use super::RootDataError;
use crate::cyclotomic::Cyclotomic;

/// The extra coordinate `x` of a spin-cover torus, constrained by `x² = ∏ x_i` over
/// the coordinate block `start..start+len`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpinCoordinate {
    pub exponent: Rational64,
    pub start: usize,
    pub len: usize,
}

impl SpinCoordinate {
    pub fn block(&self) -> Range<usize> {
        self.start..self.start + self.len
    }
}

/// A finite-order torus element `t = (e^{2πi q_1}, …; e^{2πi q})` with exponents in `[0,1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorusElement {
    exponents: Vec<Rational64>,
    spin: Option<SpinCoordinate>,
}

impl TorusElement {
    /// A torus element whose spin coordinate, if any, covers all coordinates.
    pub fn new(
        exponents: Vec<Rational64>,
        spin_exponent: Option<Rational64>,
    ) -> Result<Self, RootDataError> {
        let len = exponents.len();
        Self::with_spin(
            exponents,
            spin_exponent.map(|q| SpinCoordinate {
                exponent: q,
                start: 0,
                len,
            }),
        )
    }

    pub fn with_spin(
        exponents: Vec<Rational64>,
        spin: Option<SpinCoordinate>,
    ) -> Result<Self, RootDataError> {
        let exponents: Vec<Rational64> = exponents.into_iter().map(frac).collect();
        let spin = spin.map(|s| SpinCoordinate {
            exponent: frac(s.exponent),
            ..s
        });
        if let Some(s) = &spin {
            if s.start + s.len > exponents.len() {
                return Err(RootDataError::DimensionMismatch {
                    expected: exponents.len(),
                    got: s.start + s.len,
                });
            }
            let sum: Rational64 = exponents[s.block()].iter().sum();
            if !frac(s.exponent * 2 - sum).is_zero() {
                return Err(RootDataError::SpinConstraint(format!(
                    "2*{} vs {}",
                    s.exponent, sum
                )));
            }
        }
        Ok(TorusElement { exponents, spin })
    }

    /// Spin coordinate chosen as `(Σ q_i)/2` reduced into `[0,1)`.
    pub fn with_canonical_spin(exponents: Vec<Rational64>) -> Self {
        let exponents: Vec<Rational64> = exponents.into_iter().map(frac).collect();
        let sum: Rational64 = exponents.iter().sum();
        Self::new(exponents, Some(frac(sum / 2))).expect("canonical spin satisfies the constraint")
    }

    pub fn identity(rank: usize) -> Self {
        TorusElement {
            exponents: vec![Rational64::zero(); rank],
            spin: None,
        }
    }

    pub fn exponents(&self) -> &[Rational64] {
        &self.exponents
    }

    pub fn spin(&self) -> Option<&SpinCoordinate> {
        self.spin.as_ref()
    }

    pub fn spin_exponent(&self) -> Option<Rational64> {
        self.spin.as_ref().map(|s| s.exponent)
    }

    pub fn rank(&self) -> usize {
        self.exponents.len()
    }

    /// Least common multiple of all exponent denominators.
    pub fn order(&self) -> u64 {
        let mut n: i64 = 1;
        for q in self
            .exponents
            .iter()
            .chain(self.spin.iter().map(|s| &s.exponent))
        {
            n = n.lcm(q.denom());
        }
        n as u64
    }

    /// `λ(t)` as an exponent in `[0,1)`, so that `λ(t) = exp(2πi·result)`.
    pub fn exponent_of(&self, w: &Weight) -> Result<Rational64, RootDataError> {
        if w.dim() != self.rank() {
            return Err(RootDataError::DimensionMismatch {
                expected: self.rank(),
                got: w.dim(),
            });
        }
        let mut total = Rational64::zero();
        let half = r(1, 2);
        let block = self.spin.as_ref().map(|s| s.block());
        let in_block = |i: usize| block.as_ref().is_some_and(|b| b.contains(&i));
        let block_coords: Vec<Rational64> = match &block {
            Some(b) => w.0[b.clone()].to_vec(),
            None => Vec::new(),
        };
        let half_block = !block_coords.is_empty() && block_coords.iter().all(|c| frac(*c) == half);
        for (i, c) in w.0.iter().enumerate() {
            if c.is_integer() {
                total += c * self.exponents[i];
            } else if in_block(i) && half_block {
                total += (c - half) * self.exponents[i];
            } else if frac(*c) == half {
                return Err(if self.spin.is_none() {
                    RootDataError::SpinWeightWithoutSpinCoordinate(w.to_string())
                } else {
                    RootDataError::UnrepresentableWeight(w.to_string())
                });
            } else {
                return Err(RootDataError::UnrepresentableWeight(w.to_string()));
            }
        }
        if half_block {
            total += self.spin.as_ref().expect("block implies spin").exponent;
        }
        Ok(frac(total))
    }

    pub fn evaluate(&self, w: &Weight) -> Result<Cyclotomic, RootDataError> {
        Ok(exp_2pi_i(self.exponent_of(w)?))
    }

    /// Coordinatewise product with an element of the same shape.
    pub fn mul(&self, other: &TorusElement) -> Result<TorusElement, RootDataError> {
        self.same_shape(other)?;
        let exps = self
            .exponents
            .iter()
            .zip(&other.exponents)
            .map(|(a, b)| a + b)
            .collect();
        let spin = match (&self.spin, &other.spin) {
            (Some(a), Some(b)) => Some(SpinCoordinate {
                exponent: a.exponent + b.exponent,
                ..a.clone()
            }),
            _ => None,
        };
        TorusElement::with_spin(exps, spin)
    }

    pub fn inverse(&self) -> TorusElement {
        TorusElement::with_spin(
            self.exponents.iter().map(|q| -q).collect(),
            self.spin.as_ref().map(|s| SpinCoordinate {
                exponent: -s.exponent,
                ..s.clone()
            }),
        )
        .expect("inverse keeps the spin constraint")
    }

    fn same_shape(&self, other: &TorusElement) -> Result<(), RootDataError> {
        if self.rank() != other.rank() {
            return Err(RootDataError::DimensionMismatch {
                expected: self.rank(),
                got: other.rank(),
            });
        }
        let a = self.spin.as_ref().map(|s| (s.start, s.len));
        let b = other.spin.as_ref().map(|s| (s.start, s.len));
        if a != b {
            return Err(RootDataError::UnsupportedFamily(
                "torus elements with different spin blocks".into(),
            ));
        }
        Ok(())
    }

    /// Concatenate factor elements; at most one factor may carry a spin coordinate.
    pub fn concat(parts: &[TorusElement]) -> Result<TorusElement, RootDataError> {
        let mut exps = Vec::new();
        let mut spin = None;
        for p in parts {
            if let Some(s) = &p.spin {
                if spin.is_some() {
                    return Err(RootDataError::UnsupportedFamily(
                        "products with more than one spin-cover factor".into(),
                    ));
                }
                spin = Some(SpinCoordinate {
                    exponent: s.exponent,
                    start: exps.len() + s.start,
                    len: s.len,
                });
            }
            exps.extend_from_slice(&p.exponents);
        }
        TorusElement::with_spin(exps, spin)
    }
}

impl fmt::Display for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, q) in self.exponents.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{q}")?;
        }
        if let Some(s) = &self.spin {
            write!(f, "; {}", s.exponent)?;
        }
        write!(f, ")")
    }
}

fn exp_2pi_i(q: Rational64) -> Cyclotomic {
    Cyclotomic::zeta_pow(*q.denom() as usize, *q.numer())
}

/// `w(t0)` as an exact root of unity.
pub fn evaluate_character(t0: &TorusElement, w: &Weight) -> Result<Cyclotomic, RootDataError> {
    t0.evaluate(w)
}

/// A signed permutation of torus coordinates: `(w·t)_i = t_{perm[i]}^{signs[i]}`.
///
/// On characters it acts by `ε_i ↦ signs[i]·ε_{perm[i]}`, so that `t(w·λ) = (w·t)(λ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedPerm {
    pub perm: Vec<usize>,
    pub signs: Vec<i8>,
}

impl SignedPerm {
    pub fn identity(n: usize) -> Self {
        SignedPerm {
            perm: (0..n).collect(),
            signs: vec![1; n],
        }
    }

    /// `t ↦ t^{-1}`.
    pub fn minus_one(n: usize) -> Self {
        SignedPerm {
            perm: (0..n).collect(),
            signs: vec![-1; n],
        }
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    /// Coordinates flipped by the action on the torus, as source indices.
    fn flipped_sources(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.signs[i] < 0)
            .map(|i| self.perm[i])
            .collect()
    }

    pub fn act_torus(&self, t: &TorusElement) -> Result<TorusElement, RootDataError> {
        if t.rank() != self.len() {
            return Err(RootDataError::DimensionMismatch {
                expected: self.len(),
                got: t.rank(),
            });
        }
        let q = t.exponents();
        let exps: Vec<Rational64> = (0..self.len())
            .map(|i| q[self.perm[i]] * Rational64::from_integer(self.signs[i] as i64))
            .collect();
        let spin = t.spin().map(|s| {
            let shift: Rational64 = self
                .flipped_sources()
                .into_iter()
                .filter(|j| s.block().contains(j))
                .map(|j| q[j])
                .sum();
            SpinCoordinate {
                exponent: s.exponent - shift,
                ..s.clone()
            }
        });
        TorusElement::with_spin(exps, spin)
    }

    pub fn act_weight(&self, w: &Weight) -> Weight {
        let mut out = Weight::zero(w.dim());
        for i in 0..self.len() {
            out.0[self.perm[i]] += w.0[i] * Rational64::from_integer(self.signs[i] as i64);
        }
        out
    }
}

/// Which signed permutations of a coordinate block belong to the symmetry group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeylAction {
    /// Fixed coordinates.
    Trivial,
    /// `S_n` (type A, or the base of a Hirzebruch surface).
    Permutations,
    /// `S_n ⋉ (Z/2)^n` (types B and C).
    SignedPermutations,
    /// Even number of sign changes (type D).
    EvenSignedPermutations,
}

/// Search the group described by `blocks` for `w` with `w·t0 = t0^{-1}`.
/// The search order is deterministic (lowest image index first, `+` before `-`).
pub fn find_inverting_element(
    t0: &TorusElement,
    blocks: &[(Range<usize>, WeylAction)],
) -> Option<SignedPerm> {
    let target = t0.inverse();
    let n = t0.rank();
    let mut perm = vec![usize::MAX; n];
    let mut signs = vec![1i8; n];
    for (b, act) in blocks {
        if *act == WeylAction::Trivial {
            for i in b.clone() {
                perm[i] = i;
            }
        }
    }
    let q = t0.exponents().to_vec();
    let free: Vec<(usize, Range<usize>, WeylAction)> = blocks
        .iter()
        .filter(|(_, a)| *a != WeylAction::Trivial)
        .flat_map(|(b, a)| b.clone().map(move |i| (i, b.clone(), *a)))
        .collect();
    let mut used = vec![false; n];
    for (i, p) in perm.iter().enumerate() {
        if *p != usize::MAX {
            used[i] = true;
        }
    }
    #[allow(clippy::too_many_arguments)]
    fn rec(
        k: usize,
        free: &[(usize, Range<usize>, WeylAction)],
        q: &[Rational64],
        perm: &mut Vec<usize>,
        signs: &mut Vec<i8>,
        used: &mut Vec<bool>,
        blocks: &[(Range<usize>, WeylAction)],
        t0: &TorusElement,
        target: &TorusElement,
    ) -> Option<SignedPerm> {
        if k == free.len() {
            for (b, act) in blocks {
                if *act == WeylAction::EvenSignedPermutations {
                    let minus = b.clone().filter(|&i| signs[i] < 0).count();
                    if minus % 2 == 1 {
                        return None;
                    }
                }
            }
            let w = SignedPerm {
                perm: perm.clone(),
                signs: signs.clone(),
            };
            return match w.act_torus(t0) {
                Ok(img) if img == *target => Some(w),
                _ => None,
            };
        }
        let (i, ref b, act) = free[k];
        let sign_choices: &[i8] = match act {
            WeylAction::Permutations => &[1],
            _ => &[1, -1],
        };
        for j in b.clone() {
            if used[j] {
                continue;
            }
            for &s in sign_choices {
                let val = frac(q[j] * Rational64::from_integer(s as i64));
                if val != frac(-q[i]) {
                    continue;
                }
                used[j] = true;
                perm[i] = j;
                signs[i] = s;
                if let Some(w) = rec(k + 1, free, q, perm, signs, used, blocks, t0, target) {
                    return Some(w);
                }
                used[j] = false;
                perm[i] = usize::MAX;
                signs[i] = 1;
            }
        }
        None
    }
    // Trivial coordinates must already be self-inverse.
    for (b, act) in blocks {
        if *act == WeylAction::Trivial && b.clone().any(|i| frac(-q[i]) != q[i]) {
            return None;
        }
    }
    rec(
        0, &free, &q, &mut perm, &mut signs, &mut used, blocks, t0, &target,
    )
}

/// A named relation `w·t0 = z·t0` (or `w·t0 = t0^{-1}`).
#[derive(Clone, Debug)]
pub struct WeylRelation {
    pub name: String,
    pub element: SignedPerm,
    /// `Some(z)` for `w·t0 = z·t0`, `None` for `w·t0 = t0^{-1}`.
    pub central: Option<TorusElement>,
}

impl WeylRelation {
    /// `w_1` on the even quadric `Q^{2k-2}`; expected multiplier `z_0 = (1,…,1;-1)`.
    pub fn quadric_even_w1(k: usize) -> Self {
        let mut signs = vec![1i8; k];
        signs[0] = -1;
        signs[k - 1] = -1;
        WeylRelation {
            name: format!("quadric-even:{} w1", 2 * k - 2),
            element: SignedPerm {
                perm: (0..k).collect(),
                signs,
            },
            central: Some(z0(k)),
        }
    }

    /// `w_2` on the even quadric with multiplier `z = (-1,…,-1; -ζ_n^{-k(k-1)/2})`.
    pub fn quadric_even_w2(k: usize) -> Self {
        let n = (2 * k - 2) as i64;
        let kk = k as i64;
        let eps_negative = k % 2 == 1;
        let mut perm = vec![0usize; k];
        let mut signs = vec![-1i8; k];
        perm[0] = k - 1;
        signs[0] = 1;
        for (i, p) in perm.iter_mut().enumerate().take(k - 1).skip(1) {
            *p = k - 1 - i;
        }
        perm[k - 1] = 0;
        signs[k - 1] = if eps_negative { -1 } else { 1 };
        let z = TorusElement::new(vec![r(1, 2); k], Some(r(1, 2) - r(kk * (kk - 1) / 2, n)))
            .expect("central element satisfies the spin constraint");
        WeylRelation {
            name: format!("quadric-even:{} w2", 2 * k - 2),
            element: SignedPerm { perm, signs },
            central: Some(z),
        }
    }

    /// `w_1` on the odd quadric `Q^{2k-1}`: invert `x_1`.
    pub fn quadric_odd_w1(k: usize) -> Self {
        let mut signs = vec![1i8; k];
        signs[0] = -1;
        WeylRelation {
            name: format!("quadric-odd:{} w1", 2 * k - 1),
            element: SignedPerm {
                perm: (0..k).collect(),
                signs,
            },
            central: Some(z0(k)),
        }
    }

    /// `w_1` on `SG(k,2k)`: `(x_1,…,x_k) ↦ (x_k^{-1},…,x_1^{-1})`, multiplier `(-1,…,-1)`.
    pub fn symplectic_w1(k: usize) -> Self {
        WeylRelation {
            name: format!("sg:{k} w1"),
            element: SignedPerm {
                perm: (0..k).rev().collect(),
                signs: vec![-1; k],
            },
            central: Some(TorusElement::new(vec![r(1, 2); k], None).expect("no spin")),
        }
    }

    /// Cyclic shift on `P^{n-1}` with multiplier the scalar `ζ_n`.
    pub fn projective_cyclic(n: usize) -> Self {
        WeylRelation {
            name: format!("projective:{n} w1"),
            element: SignedPerm {
                perm: (0..n).map(|i| (i + 1) % n).collect(),
                signs: vec![1; n],
            },
            central: Some(TorusElement::new(vec![r(1, n as i64); n], None).expect("no spin")),
        }
    }

    /// The longest element `w_0` of a classical Weyl group, with target `t0^{-1}`.
    /// For `D_n` with `n` odd it is `(x_1^{-1},…,x_{n-1}^{-1},x_n)`.
    pub fn longest_element(kind: super::RootKind, rank: usize) -> Self {
        use super::RootKind;
        let element = match kind {
            RootKind::A => SignedPerm {
                perm: (0..=rank).rev().collect(),
                signs: vec![1; rank + 1],
            },
            RootKind::D if rank % 2 == 1 => {
                let mut signs = vec![-1i8; rank];
                signs[rank - 1] = 1;
                SignedPerm {
                    perm: (0..rank).collect(),
                    signs,
                }
            }
            _ => SignedPerm::minus_one(rank),
        };
        WeylRelation {
            name: format!("{kind}{rank} w0"),
            element,
            central: None,
        }
    }
}

/// `z_0 = (1,…,1; -1)`, the kernel of `Spin → SO`.
pub fn z0(k: usize) -> TorusElement {
    TorusElement::new(vec![Rational64::zero(); k], Some(r(1, 2)))
        .expect("z0 satisfies the spin constraint")
}

/// True iff the relation holds exactly on exponent vectors mod 1.
pub fn weyl_relation_check(relation: &WeylRelation, t0: &TorusElement) -> bool {
    let Ok(lhs) = relation.element.act_torus(t0) else {
        return false;
    };
    let rhs = match &relation.central {
        Some(z) => match z.mul(t0) {
            Ok(v) => v,
            Err(_) => return false,
        },
        None => t0.inverse(),
    };
    lhs == rhs
}
