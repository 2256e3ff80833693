use num_integer::Integer;
use num_rational::Rational64;
use num_traits::Zero;

use super::system::{RootKind, RootSystem};
use super::torus::TorusElement;
use super::weight::{frac, r, Weight};
use super::RootDataError;

/// Outcome of the root-theoretic form of (⋆) for `G/P_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarReport {
    pub passed: bool,
    /// Roots with `α(t0) = 1`.
    pub failed_roots: Vec<Weight>,
    /// `α(t0)^{N_i} = 1` for every root of the same length as `α_i`.
    pub weight_power_check: bool,
    /// `ω_i(t0)^{N_i} = (-1)^{dim X}`.
    pub determinant_sign_check: bool,
    pub order: u64,
    pub violations: Vec<String>,
}

/// Check conditions (a) and (b) for `t0` on `G/P_i`.
pub fn check_star_conditions(
    rs: &RootSystem,
    i: usize,
    t0: &TorusElement,
) -> Result<StarReport, RootDataError> {
    let n = rs.n_index(i)? as i64;
    let dim = rs.dim_x(i)? as i64;
    let mut violations = Vec::new();
    let mut failed_roots = Vec::new();
    for a in &rs.roots {
        if t0.exponent_of(a)?.is_zero() {
            violations.push(format!("root {a} evaluates to 1"));
            failed_roots.push(a.clone());
        }
    }
    let mut weight_power_check = true;
    for a in rs.roots_of_length_of(i) {
        let e = t0.exponent_of(&a)?;
        if !frac(e * n).is_zero() {
            weight_power_check = false;
            violations.push(format!("root {a}: alpha(t0)^{n} != 1"));
        }
    }
    let power = if rs.kind == RootKind::A {
        // N_i ω_i is integral, so the pairing with exponents mod 1 is well defined.
        if t0.rank() != rs.ambient_dim {
            return Err(RootDataError::DimensionMismatch {
                expected: rs.ambient_dim,
                got: t0.rank(),
            });
        }
        let scaled = rs.omega(i).scale(Rational64::from_integer(n));
        frac(
            scaled
                .0
                .iter()
                .zip(t0.exponents())
                .map(|(c, q)| c * q)
                .sum(),
        )
    } else {
        frac(t0.exponent_of(rs.omega(i))? * n)
    };
    let determinant_sign_check = power == frac(r(dim, 2));
    if !determinant_sign_check {
        violations.push(format!("omega_{i}(t0)^{n} != (-1)^{dim}"));
    }
    Ok(StarReport {
        passed: violations.is_empty(),
        failed_roots,
        weight_power_check,
        determinant_sign_check,
        order: t0.order(),
        violations,
    })
}

/// Result of an exhaustive search over torus elements of bounded order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedSearch {
    pub kind: RootKind,
    pub rank: usize,
    pub node: usize,
    pub order_bound: u64,
    /// Number of candidate elements examined.
    pub examined: u64,
    /// `(N, a)` with `ω_j(t) = exp(2πi a_j / N)` for the first element found.
    pub witness: Option<(u64, Vec<u64>)>,
    /// False if the budget ran out before every order up to the bound was covered.
    pub complete: bool,
}

impl BoundedSearch {
    pub fn found(&self) -> bool {
        self.witness.is_some()
    }
}

const DEFAULT_BUDGET: u64 = 50_000_000;

/// Search elements `t` of order exactly `N ≤ order_bound`, parametrized by the values
/// `ω_j(t) = exp(2πi a_j/N)`, for one satisfying (a) and (b).
pub fn bounded_star_search(
    rs: &RootSystem,
    i: usize,
    order_bound: u64,
) -> Result<BoundedSearch, RootDataError> {
    bounded_star_search_with_budget(rs, i, order_bound, DEFAULT_BUDGET)
}

pub fn bounded_star_search_with_budget(
    rs: &RootSystem,
    i: usize,
    order_bound: u64,
    budget: u64,
) -> Result<BoundedSearch, RootDataError> {
    let ni = rs.n_index(i)? as i64;
    let dim = rs.dim_x(i)? as i64;
    let rank = rs.rank;
    let to_ints = |w: &Weight| -> Vec<i64> {
        rs.coroot_coordinates(w)
            .into_iter()
            .map(|c| {
                assert!(c.is_integer());
                *c.numer()
            })
            .collect()
    };
    let positive: Vec<Vec<i64>> = rs.positive_roots.iter().map(to_ints).collect();
    let same_len: Vec<Vec<i64>> = rs
        .roots_of_length_of(i)
        .iter()
        .filter(|a| rs.positive_roots.contains(a))
        .map(to_ints)
        .collect();
    let mut out = BoundedSearch {
        kind: rs.kind,
        rank,
        node: i,
        order_bound,
        examined: 0,
        witness: None,
        complete: true,
    };
    for big_n in 1..=order_bound as i64 {
        // (b) on ω_i: 2 N_i a_i ≡ dim·N (mod 2N).
        let ai_choices: Vec<i64> = (0..big_n)
            .filter(|a| (2 * ni * a - dim * big_n).rem_euclid(2 * big_n) == 0)
            .collect();
        if ai_choices.is_empty() {
            continue;
        }
        let mut a = vec![0i64; rank];
        let free: Vec<usize> = (0..rank).filter(|&j| j != i - 1).collect();
        for &ai in &ai_choices {
            a[i - 1] = ai;
            let mut idx = vec![0i64; free.len()];
            loop {
                for (slot, &j) in free.iter().enumerate() {
                    a[j] = idx[slot];
                }
                if out.examined >= budget {
                    out.complete = false;
                    return Ok(out);
                }
                out.examined += 1;
                let g = a.iter().fold(big_n, |acc, &x| acc.gcd(&x));
                if g == 1 && satisfies(&a, big_n, ni, &positive, &same_len) {
                    out.witness = Some((big_n as u64, a.iter().map(|&x| x as u64).collect()));
                    return Ok(out);
                }
                // Odometer increment.
                let mut k = 0;
                while k < idx.len() {
                    idx[k] += 1;
                    if idx[k] < big_n {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
                if k == idx.len() {
                    break;
                }
            }
        }
    }
    Ok(out)
}

fn satisfies(a: &[i64], n: i64, ni: i64, positive: &[Vec<i64>], same_len: &[Vec<i64>]) -> bool {
    let pair = |c: &[i64]| -> i64 {
        c.iter()
            .zip(a)
            .map(|(x, y)| x * y)
            .sum::<i64>()
            .rem_euclid(n)
    };
    same_len.iter().all(|c| (pair(c) * ni).rem_euclid(n) == 0)
        && positive.iter().all(|c| pair(c) != 0)
}

/// The torus exponent vector `(λ, ε_j)` of the element with `ω_j(t) = exp(2πi a_j/N)`,
/// returned as `λ = Σ (a_j/N) α_j^∨` in ε-coordinates.
pub fn search_point_to_weight(rs: &RootSystem, n: u64, a: &[u64]) -> Weight {
    let mut lam = Weight::zero(rs.ambient_dim);
    for (j, s) in rs.simple_roots.iter().enumerate() {
        let coroot = s.scale(Rational64::from_integer(2) / s.dot(s));
        lam = &lam + &coroot.scale(r(a[j] as i64, n as i64));
    }
    lam
}
