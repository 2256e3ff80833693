//! Exact arithmetic in cyclotomic fields `Q(ζ_M)`.
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{φ(M)-1}` reduced modulo the
//! cyclotomic polynomial `Φ_M`. Conductors congruent to 2 mod 4 are folded into `M/2`
//! on construction, so every field has a unique conductor and equality is coefficientwise
//! after lifting to a common conductor.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CyclotomicError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("galois exponent {a} is not coprime to conductor {conductor}")]
    NotCoprime { a: i64, conductor: usize },
    #[error("conductor {conductor} is not a power of {p}")]
    NotPrimePowerConductor { conductor: usize, p: u64 },
    #[error("element is not integral: {0}")]
    NotIntegral(String),
    #[error("entries have different conductors ({0} and {1})")]
    MixedConductor(usize, usize),
    #[error("unit-length vector with {nonzero} nonzero entries")]
    UnitShapeViolation { nonzero: usize },
    #[error("cannot parse cyclotomic element: {0}")]
    Parse(String),
}

/// An exact element of `Q(ζ_M)`.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    conductor: usize,
    coeffs: Vec<BigRational>,
}

type PhiCache = RwLock<HashMap<usize, Arc<Vec<i64>>>>;

fn phi_cache() -> &'static PhiCache {
    static CACHE: OnceLock<PhiCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Coefficients of `Φ_m`, lowest degree first.
pub fn cyclotomic_polynomial(m: usize) -> Arc<Vec<i64>> {
    assert!(m >= 1, "conductor must be positive");
    if let Some(p) = phi_cache().read().expect("phi cache poisoned").get(&m) {
        return p.clone();
    }
    // x^m - 1 divided by Φ_d for every proper divisor d.
    let mut num: Vec<i64> = vec![0; m + 1];
    num[0] = -1;
    num[m] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            let den = cyclotomic_polynomial(d);
            num = exact_divide(&num, &den);
        }
    }
    let arc = Arc::new(num);
    phi_cache()
        .write()
        .expect("phi cache poisoned")
        .entry(m)
        .or_insert_with(|| arc.clone())
        .clone()
}

fn exact_divide(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let lead = den[dn];
    debug_assert!(lead == 1);
    let qlen = rem.len() - dn;
    let mut q = vec![0i64; qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dn] / lead;
        q[k] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[k + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

/// Euler's totient.
pub fn euler_phi(m: usize) -> usize {
    cyclotomic_polynomial(m).len() - 1
}

pub fn lcm(a: usize, b: usize) -> usize {
    a.lcm(&b)
}

fn normalized_conductor(m: usize) -> usize {
    if m % 4 == 2 {
        m / 2
    } else {
        m
    }
}

/// Reduce a polynomial in `ζ_m` (index = exponent) modulo `Φ_m`.
fn reduce_poly(m: usize, mut poly: Vec<BigRational>) -> Vec<BigRational> {
    let phi = cyclotomic_polynomial(m);
    let d = phi.len() - 1;
    if poly.len() > d {
        for k in (d..poly.len()).rev() {
            if poly[k].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut poly[k], BigRational::zero());
            for (j, &pj) in phi.iter().enumerate().take(d) {
                if pj != 0 {
                    poly[k - d + j] -= &c * BigRational::from_integer(BigInt::from(pj));
                }
            }
        }
        poly.truncate(d);
    }
    poly.resize(d, BigRational::zero());
    poly
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Cyclotomic {
    /// Build from an arbitrary polynomial in `ζ_m`.
    pub fn from_poly(m: usize, poly: Vec<BigRational>) -> Self {
        assert!(m >= 1, "conductor must be positive");
        if m % 4 == 2 {
            // ζ_m = -ζ_h^{(h+1)/2} with h = m/2 odd.
            let h = m / 2;
            let e = h.div_ceil(2);
            let mut folded = vec![BigRational::zero(); h];
            for (j, c) in poly.into_iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let idx = (j * e) % h;
                if j % 2 == 0 {
                    folded[idx] += c;
                } else {
                    folded[idx] -= c;
                }
            }
            return Self::from_poly(h, folded);
        }
        let mut wrapped = vec![BigRational::zero(); m.max(1)];
        for (j, c) in poly.into_iter().enumerate() {
            if !c.is_zero() {
                wrapped[j % m] += c;
            }
        }
        Cyclotomic {
            conductor: m,
            coeffs: reduce_poly(m, wrapped),
        }
    }

    pub fn from_rational(q: BigRational) -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: vec![q],
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// `ζ_m^k`.
    pub fn zeta_pow(m: usize, k: i64) -> Self {
        assert!(m >= 1, "conductor must be positive");
        let e = k.rem_euclid(m as i64) as usize;
        let mut poly = vec![BigRational::zero(); e + 1];
        poly[e] = BigRational::one();
        Self::from_poly(m, poly)
    }

    /// `ζ_m`.
    pub fn zeta(m: usize) -> Self {
        Self::zeta_pow(m, 1)
    }

    /// `exp(2πi·q)` for a rational `q`.
    pub fn exp_2pi_i(q: &BigRational) -> Self {
        let den = q.denom().to_usize().expect("denominator too large");
        let num = q
            .numer()
            .mod_floor(q.denom())
            .to_i64()
            .expect("numerator too large");
        Self::zeta_pow(den, num)
    }

    pub fn conductor(&self) -> usize {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Re-express in `Q(ζ_l)`; `l` must be a multiple of the conductor.
    pub fn lift(&self, l: usize) -> Self {
        let l = normalized_conductor(l);
        if l == self.conductor {
            return self.clone();
        }
        assert!(
            l.is_multiple_of(self.conductor),
            "cannot lift conductor {} to {}",
            self.conductor,
            l
        );
        let step = l / self.conductor;
        let mut poly = vec![BigRational::zero(); l];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                poly[(j * step) % l] += c;
            }
        }
        Cyclotomic {
            conductor: l,
            coeffs: reduce_poly(l, poly),
        }
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        let l = lcm(a.conductor, b.conductor);
        (a.lift(l), b.lift(l))
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(&BigRational, &BigRational) -> BigRational,
    ) -> Self {
        if self.conductor == other.conductor {
            let coeffs = self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(x, y)| f(x, y))
                .collect();
            return Cyclotomic {
                conductor: self.conductor,
                coeffs,
            };
        }
        let (a, b) = Self::common(self, other);
        a.zip_with(&b, f)
    }

    fn mul_same(&self, other: &Self) -> Self {
        let m = self.conductor;
        let n = self.coeffs.len();
        let mut prod = vec![BigRational::zero(); 2 * n];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        Cyclotomic {
            conductor: m,
            coeffs: reduce_poly(m, prod),
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Cyclotomic::one().lift(self.conductor);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against `Φ_M`.
    pub fn inverse(&self) -> Result<Self, CyclotomicError> {
        if self.is_zero() {
            return Err(CyclotomicError::DivisionByZero);
        }
        let m = self.conductor;
        let phi: Vec<BigRational> = cyclotomic_polynomial(m).iter().map(|&c| rat(c)).collect();
        let a: Vec<BigRational> = self.coeffs.clone();
        // Invariant: r_i ≡ s_i · a (mod Φ_M).
        let (mut r0, mut r1) = (phi, trim(a));
        let (mut s0, mut s1) = (Vec::<BigRational>::new(), vec![BigRational::one()]);
        while !(r1.len() == 1 && !r1[0].is_zero()) {
            let (q, r) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            if r1.is_empty() {
                unreachable!("Φ_M is irreducible, so a nonzero element is invertible");
            }
        }
        let c = r1[0].clone();
        let inv: Vec<BigRational> = s1.iter().map(|x| x / &c).collect();
        Ok(Self::from_poly(m, inv))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, CyclotomicError> {
        Ok(self * &other.inverse()?)
    }

    /// Complex conjugation `ζ ↦ ζ^{-1}`.
    pub fn conjugate(&self) -> Self {
        self.galois_unchecked(self.conductor as i64 - 1)
    }

    /// The automorphism `ζ_M ↦ ζ_M^a`.
    pub fn galois(&self, a: i64) -> Result<Self, CyclotomicError> {
        let m = self.conductor as i64;
        if a.gcd(&m) != 1 {
            return Err(CyclotomicError::NotCoprime {
                a,
                conductor: self.conductor,
            });
        }
        Ok(self.galois_unchecked(a))
    }

    fn galois_unchecked(&self, a: i64) -> Self {
        let m = self.conductor;
        let a = a.rem_euclid(m as i64) as usize;
        let mut poly = vec![BigRational::zero(); m];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                poly[(j * a) % m] += c;
            }
        }
        Cyclotomic {
            conductor: m,
            coeffs: reduce_poly(m, poly),
        }
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    /// The reduction `Z[ζ_{p^k}] → Z/p` sending `ζ` to 1.
    pub fn reduce_mod_p(&self, p: u64) -> Result<u64, CyclotomicError> {
        if !is_power_of(self.conductor as u64, p) {
            return Err(CyclotomicError::NotPrimePowerConductor {
                conductor: self.conductor,
                p,
            });
        }
        if !self.is_integral() {
            return Err(CyclotomicError::NotIntegral(self.to_string()));
        }
        let sum: BigInt = self.coeffs.iter().map(|c| c.to_integer()).sum();
        Ok(sum
            .mod_floor(&BigInt::from(p))
            .to_u64()
            .expect("residue fits"))
    }

    /// The multiplicative order if the element is a root of unity.
    pub fn root_of_unity_order(&self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let l = lcm(2, self.conductor) as u64;
        if !self.pow(l).is_one() {
            return None;
        }
        let mut divisors: Vec<u64> = (1..=l).filter(|d| l.is_multiple_of(*d)).collect();
        divisors.sort_unstable();
        divisors.into_iter().find(|&d| self.pow(d).is_one())
    }

    /// Value under the embedding `ζ_M ↦ exp(2πi·a/M)`. Diagnostics only.
    pub fn embed(&self, a: i64) -> (f64, f64) {
        let m = self.conductor as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.coeffs.iter().enumerate() {
            let v = c.to_f64().unwrap_or(f64::NAN);
            let ang = 2.0 * std::f64::consts::PI * (a as f64) * (j as f64) / m;
            re += v * ang.cos();
            im += v * ang.sin();
        }
        (re, im)
    }
}

fn is_power_of(mut m: u64, p: u64) -> bool {
    if p < 2 {
        return false;
    }
    while m.is_multiple_of(p) {
        m /= p;
    }
    m == 1
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = trim(a.to_vec());
    let db = b.len() - 1;
    let lead = &b[db];
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut q = vec![BigRational::zero(); rem.len() - db];
    while rem.len() >= b.len() {
        let k = rem.len() - b.len();
        let c = rem.last().expect("nonempty") / lead;
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] -= &c * bj;
        }
        q[k] = c;
        rem = trim(rem);
    }
    (trim(q), rem)
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = Self::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.zip_with(rhs, |x, y| x + y)
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.zip_with(rhs, |x, y| x - y)
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.conductor == rhs.conductor {
            return self.mul_same(rhs);
        }
        let (a, b) = Cyclotomic::common(self, rhs);
        a.mul_same(&b)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &Cyclotomic) -> Cyclotomic {
                (&self).$m(rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Self {
        iter.fold(Cyclotomic::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for Cyclotomic {
    fn product<I: Iterator<Item = Cyclotomic>>(iter: I) -> Self {
        iter.fold(Cyclotomic::one(), |a, b| a * b)
    }
}

impl From<i64> for Cyclotomic {
    fn from(n: i64) -> Self {
        Cyclotomic::from_int(n)
    }
}

/// Canonical text for a rational: `3`, `-7/2`.
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{}): ", self.conductor)?;
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = format_rational(&c.abs());
            let term = if k == 0 { mag } else { format!("{mag}*z^{k}") };
            if first {
                if c.is_negative() {
                    write!(f, "-{term}")?;
                } else {
                    write!(f, "{term}")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - {term}")?;
            } else {
                write!(f, " + {term}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl FromStr for Cyclotomic {
    type Err = CyclotomicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CyclotomicError::Parse(s.to_string());
        let rest = s.trim().strip_prefix("Q(zeta_").ok_or_else(bad)?;
        let (m, body) = rest.split_once("):").ok_or_else(bad)?;
        let m: usize = m.trim().parse().map_err(|_| bad())?;
        if m == 0 {
            return Err(bad());
        }
        let mut poly: Vec<BigRational> = Vec::new();
        // Tokenize into signed terms.
        let body = body.trim().replace(" - ", " + -").replace(" + ", "\u{1}");
        for raw in body.split('\u{1}') {
            let term = raw.trim();
            if term.is_empty() {
                return Err(bad());
            }
            let (coef, k) = match term.split_once("*z") {
                Some((c, e)) => {
                    let k = match e.strip_prefix('^') {
                        Some(k) => k.trim().parse::<usize>().map_err(|_| bad())?,
                        None if e.is_empty() => 1,
                        None => return Err(bad()),
                    };
                    (c, k)
                }
                None => (term, 0),
            };
            let c = parse_rational(coef).ok_or_else(bad)?;
            if poly.len() <= k {
                poly.resize(k + 1, BigRational::zero());
            }
            poly[k] += c;
        }
        Ok(Cyclotomic::from_poly(m, poly))
    }
}

/// Outcome of [`classify_unit_vector`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnitVectorClass {
    /// The only nonzero entry sits at `index` and is a root of unity of order `order`.
    Unit { index: usize, order: u64 },
    /// The squared length `Σ z_i·conj(z_i)` differs from 1.
    NotUnitLength(Cyclotomic),
}

/// Classify an integral vector by its squared Hermitian length.
pub fn classify_unit_vector(zs: &[Cyclotomic]) -> Result<UnitVectorClass, CyclotomicError> {
    if let Some(first) = zs.first() {
        for z in zs {
            if z.conductor() != first.conductor() {
                return Err(CyclotomicError::MixedConductor(
                    first.conductor(),
                    z.conductor(),
                ));
            }
        }
    }
    if let Some(z) = zs.iter().find(|z| !z.is_integral()) {
        return Err(CyclotomicError::NotIntegral(z.to_string()));
    }
    let s: Cyclotomic = zs.iter().map(|z| z * &z.conjugate()).sum();
    if !s.is_one() {
        return Ok(UnitVectorClass::NotUnitLength(s));
    }
    let nonzero: Vec<usize> = (0..zs.len()).filter(|&i| !zs[i].is_zero()).collect();
    if nonzero.len() != 1 {
        return Err(CyclotomicError::UnitShapeViolation {
            nonzero: nonzero.len(),
        });
    }
    let index = nonzero[0];
    match zs[index].root_of_unity_order() {
        Some(order) => Ok(UnitVectorClass::Unit { index, order }),
        None => Err(CyclotomicError::UnitShapeViolation { nonzero: 1 }),
    }
}
