use num_rational::Rational64;
use num_traits::Zero;

use super::system::RootKind;
use super::weight::{r, Weight};
use super::RootDataError;

/// Outcome of the congruence system for an `E6` (node 1) or `E7` (node 7) solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ESeriesReport {
    pub kind: RootKind,
    pub passed: bool,
    pub modulus: i64,
    /// One entry per violated clause.
    pub violations: Vec<String>,
}

fn is_half_integral(q: &Rational64) -> bool {
    (q * 2).is_integer()
}

fn is_integer(q: Rational64) -> bool {
    q.is_integer()
}

fn congruent(x: Rational64, y: Rational64, m: i64) -> bool {
    let d = (x - y) / m;
    d.is_integer()
}

fn subset_sums(a: &[Rational64], odd: bool) -> Vec<(Vec<usize>, Rational64)> {
    let n = a.len();
    (0u32..1 << n)
        .filter(|mask| (mask.count_ones() % 2 == 1) == odd)
        .map(|mask| {
            let idx: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let s = idx.iter().map(|&i| a[i]).sum();
            (idx, s)
        })
        .collect()
}

fn fmt_subset(idx: &[usize]) -> String {
    let names: Vec<String> = idx.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", names.join(","))
}

/// Check `(a_1,…;c)` against the congruence system for `E6` (five `a_i`, modulus 12) or
/// `E7` (six `a_i`, modulus 18). With `impose_w0`, `E6` additionally needs
/// `a_2 - a_1 = a_4 - a_3` and `c = a_2 + a_3 + 2a_5`; for `E7` the relation is automatic.
pub fn verify_e_series_solution(
    kind: RootKind,
    a: &[Rational64],
    c: Rational64,
    impose_w0: bool,
) -> Result<ESeriesReport, RootDataError> {
    let (len, modulus) = match kind {
        RootKind::E6 => (5, 12),
        RootKind::E7 => (6, 18),
        other => {
            return Err(RootDataError::MalformedSolution(format!(
                "no congruence system for {other}"
            )))
        }
    };
    if a.len() != len {
        return Err(RootDataError::MalformedSolution(format!(
            "{kind} expects {len} coordinates a_i, got {}",
            a.len()
        )));
    }
    let mut v = Vec::new();
    for (i, x) in a.iter().enumerate() {
        if !is_half_integral(x) {
            v.push(format!("a_{} = {x} is not in Z/2", i + 1));
        }
    }
    for i in 1..len {
        if !is_integer(a[i] - a[0]) {
            v.push(format!("a_{} - a_1 is not an integer", i + 1));
        }
    }
    for i in 0..len {
        for j in (i + 1)..len {
            if congruent(a[i], a[j], modulus) {
                v.push(format!("a_{} = a_{} mod {modulus}", i + 1, j + 1));
            }
            if congruent(a[i], -a[j], modulus) {
                v.push(format!("a_{} = -a_{} mod {modulus}", i + 1, j + 1));
            }
        }
    }
    let sum: Rational64 = a.iter().sum();
    match kind {
        RootKind::E6 => {
            if !is_integer(c) {
                v.push(format!("c = {c} is not an integer"));
            }
            for (idx, s) in subset_sums(a, false) {
                if congruent(c, s, modulus) {
                    v.push(format!("c = sum over S={} mod {modulus}", fmt_subset(&idx)));
                }
            }
            if impose_w0 {
                if a[1] - a[0] != a[3] - a[2] {
                    v.push("w0 relation a_2 - a_1 = a_4 - a_3 fails".into());
                }
                if c != a[1] + a[2] + a[4] * 2 {
                    v.push("w0 relation c = a_2 + a_3 + 2a_5 fails".into());
                }
            }
        }
        _ => {
            if !congruent(sum, Rational64::from_integer(1), 2) {
                v.push(format!("sum of a_i = {sum} is not 1 mod 2"));
            }
            if !is_integer(c - a[5]) {
                v.push("c - a_6 is not an integer".into());
            }
            if congruent(c * 2, sum, modulus) {
                v.push(format!("2c = sum of a_i mod {modulus}"));
            }
            for (idx, s) in subset_sums(a, true) {
                if congruent(c, s, modulus) {
                    v.push(format!("c = sum over S={} mod {modulus}", fmt_subset(&idx)));
                }
            }
        }
    }
    Ok(ESeriesReport {
        kind,
        passed: v.is_empty(),
        modulus,
        violations: v,
    })
}

/// The rational weight `λ` encoded by a solution: `12λ = Σ a_i ε_i + b(ε_8 - ε_7 - ε_6)`
/// with `c = (3b + Σ a_i)/2` for `E6`, and `18λ = Σ a_i ε_i + b(ε_8 - ε_7)` with
/// `c = b + Σ a_i / 2` for `E7`.
pub fn e_series_lambda(
    kind: RootKind,
    a: &[Rational64],
    c: Rational64,
) -> Result<Weight, RootDataError> {
    let sum: Rational64 = a.iter().sum();
    let mut v = vec![Rational64::zero(); 8];
    let m = match kind {
        RootKind::E6 if a.len() == 5 => {
            let b = (c * 2 - sum) / 3;
            v[5] = -b;
            v[6] = -b;
            v[7] = b;
            12
        }
        RootKind::E7 if a.len() == 6 => {
            let b = c - sum / 2;
            v[6] = -b;
            v[7] = b;
            18
        }
        _ => {
            return Err(RootDataError::MalformedSolution(format!(
                "{kind} with {} coordinates",
                a.len()
            )))
        }
    };
    for (i, x) in a.iter().enumerate() {
        v[i] = *x;
    }
    Ok(Weight(v).scale(r(1, m)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::build_root_system;

    fn ints(v: &[i64]) -> Vec<Rational64> {
        v.iter().map(|&x| Rational64::from_integer(x)).collect()
    }

    /// Direct root-theoretic check of the weight `λ`.
    fn direct(kind: RootKind, a: &[i64], c: i64) -> bool {
        let rs = build_root_system(kind, kind.fixed_rank().unwrap()).unwrap();
        let lam = e_series_lambda(kind, &ints(a), Rational64::from_integer(c)).unwrap();
        let m = if kind == RootKind::E6 { 12 } else { 18 };
        let roots_ok = rs.roots.iter().all(|al| {
            let p = lam.dot(al);
            !p.is_integer() && (p * m).is_integer()
        });
        let weights_ok = kind != RootKind::E6
            || rs
                .fundamental_weights
                .iter()
                .all(|w| (lam.dot(w) * m).is_integer());
        let sign_ok = kind != RootKind::E7 || (lam.dot(rs.omega(7)) * m - r(1, 2)).is_integer();
        roots_ok && weights_ok && sign_ok
    }

    #[test]
    fn stated_solutions_pass() {
        let e6 = verify_e_series_solution(RootKind::E6, &ints(&[0, 1, 2, 3, 4]), 11.into(), true)
            .unwrap();
        assert!(e6.passed, "{:?}", e6.violations);
        for c in [16, 17] {
            let e7 =
                verify_e_series_solution(RootKind::E7, &ints(&[0, 1, 2, 3, 4, 5]), c.into(), false)
                    .unwrap();
            assert!(e7.passed, "{:?}", e7.violations);
        }
    }

    #[test]
    fn zero_c_fails_on_the_empty_subset() {
        let rep = verify_e_series_solution(RootKind::E6, &ints(&[0, 1, 2, 3, 4]), 0.into(), false)
            .unwrap();
        assert!(!rep.passed);
        assert!(rep.violations.iter().any(|s| s.contains("S={}")));
    }

    #[test]
    fn malformed_inputs() {
        assert!(verify_e_series_solution(RootKind::E6, &ints(&[0, 1]), 1.into(), false).is_err());
        assert!(verify_e_series_solution(RootKind::E8, &ints(&[0; 7]), 1.into(), false).is_err());
    }

    #[test]
    fn congruences_agree_with_direct_root_check() {
        assert!(direct(RootKind::E6, &[0, 1, 2, 3, 4], 11));
        assert!(direct(RootKind::E7, &[0, 1, 2, 3, 4, 5], 16));
        assert!(direct(RootKind::E7, &[0, 1, 2, 3, 4, 5], 17));
        assert!(!direct(RootKind::E6, &[0, 1, 2, 3, 4], 0));
        for c in 0..12 {
            let rep =
                verify_e_series_solution(RootKind::E6, &ints(&[0, 1, 2, 3, 4]), c.into(), false)
                    .unwrap();
            assert_eq!(
                rep.passed,
                direct(RootKind::E6, &[0, 1, 2, 3, 4], c),
                "E6 c={c}"
            );
        }
        for c in 0..18 {
            let rep =
                verify_e_series_solution(RootKind::E7, &ints(&[0, 1, 2, 3, 4, 5]), c.into(), false)
                    .unwrap();
            assert_eq!(
                rep.passed,
                direct(RootKind::E7, &[0, 1, 2, 3, 4, 5], c),
                "E7 c={c}"
            );
        }
    }
}
