use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

use super::lattice::order_modulo_lattice;
use super::weight::{r, Weight};
use super::RootDataError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootKind {
    A,
    B,
    C,
    D,
    E6,
    E7,
    E8,
    F4,
    G2,
}

impl RootKind {
    pub fn is_classical(self) -> bool {
        matches!(self, RootKind::A | RootKind::B | RootKind::C | RootKind::D)
    }

    /// The rank for exceptional kinds.
    pub fn fixed_rank(self) -> Option<usize> {
        match self {
            RootKind::E6 => Some(6),
            RootKind::E7 => Some(7),
            RootKind::E8 => Some(8),
            RootKind::F4 => Some(4),
            RootKind::G2 => Some(2),
            _ => None,
        }
    }
}

impl fmt::Display for RootKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RootKind::A => "A",
            RootKind::B => "B",
            RootKind::C => "C",
            RootKind::D => "D",
            RootKind::E6 => "E6",
            RootKind::E7 => "E7",
            RootKind::E8 => "E8",
            RootKind::F4 => "F4",
            RootKind::G2 => "G2",
        };
        f.write_str(s)
    }
}

impl FromStr for RootKind {
    type Err = RootDataError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.trim().to_ascii_uppercase().as_str() {
            "A" => RootKind::A,
            "B" => RootKind::B,
            "C" => RootKind::C,
            "D" => RootKind::D,
            "E6" => RootKind::E6,
            "E7" => RootKind::E7,
            "E8" => RootKind::E8,
            "F4" => RootKind::F4,
            "G2" => RootKind::G2,
            other => return Err(RootDataError::Parse(format!("unknown root kind {other:?}"))),
        })
    }
}

/// A root datum in Bourbaki ε-coordinates with the standard Euclidean form.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub kind: RootKind,
    pub rank: usize,
    /// Dimension of the ambient ε-space.
    pub ambient_dim: usize,
    pub roots: Vec<Weight>,
    pub positive_roots: Vec<Weight>,
    pub simple_roots: Vec<Weight>,
    /// Fundamental weights lying in the span of the roots.
    pub fundamental_weights: Vec<Weight>,
}

impl RootSystem {
    pub fn inner_product(&self, a: &Weight, b: &Weight) -> Rational64 {
        a.dot(b)
    }

    fn check_node(&self, i: usize) -> Result<(), RootDataError> {
        if i == 0 || i > self.rank {
            Err(RootDataError::InvalidNode {
                node: i,
                rank: self.rank,
            })
        } else {
            Ok(())
        }
    }

    /// `ω_i` for 1-based `i`.
    pub fn omega(&self, i: usize) -> &Weight {
        &self.fundamental_weights[i - 1]
    }

    /// `α_i` for 1-based `i`.
    pub fn alpha(&self, i: usize) -> &Weight {
        &self.simple_roots[i - 1]
    }

    /// `ω_i` as a character of the torus used by the explicit constructions. For type A
    /// this is `ε_1 + … + ε_i` on the `GL_{n+1}` torus; otherwise `ω_i` itself.
    pub fn character_weight(&self, i: usize) -> Weight {
        if self.kind == RootKind::A {
            let mut w = Weight::zero(self.ambient_dim);
            for c in w.0.iter_mut().take(i) {
                *c = Rational64::one();
            }
            w
        } else {
            self.omega(i).clone()
        }
    }

    /// `⟨λ, α_j^∨⟩` for every simple root.
    pub fn coroot_coordinates(&self, w: &Weight) -> Vec<Rational64> {
        self.simple_roots
            .iter()
            .map(|a| w.dot(a) * 2 / a.dot(a))
            .collect()
    }

    /// `{α ∈ Δ⁺ : (α, ω_i) > 0}`.
    pub fn positive_roots_against(&self, i: usize) -> Vec<Weight> {
        let om = self.omega(i);
        self.positive_roots
            .iter()
            .filter(|a| a.dot(om) > Rational64::zero())
            .cloned()
            .collect()
    }

    /// `dim G/P_i`.
    pub fn dim_x(&self, i: usize) -> Result<usize, RootDataError> {
        self.check_node(i)?;
        Ok(self.positive_roots_against(i).len())
    }

    /// `N_i = Σ_{(α,ω_i)>0} (α,ω_i)/(ω_i,ω_i)`.
    pub fn n_index(&self, i: usize) -> Result<u64, RootDataError> {
        self.check_node(i)?;
        let om = self.omega(i);
        let norm = om.dot(om);
        let total: Rational64 = self
            .roots
            .iter()
            .map(|a| a.dot(om))
            .filter(|p| p.is_positive())
            .map(|p| p / norm)
            .sum();
        assert!(total.is_integer(), "N_i must be an integer, got {total}");
        Ok(*total.numer() as u64)
    }

    /// Roots of the same length as `α_i`.
    pub fn roots_of_length_of(&self, i: usize) -> Vec<Weight> {
        let len = self.alpha(i).dot(self.alpha(i));
        self.roots
            .iter()
            .filter(|a| a.dot(a) == len)
            .cloned()
            .collect()
    }

    /// Integer coordinates of a root with respect to the simple roots.
    pub fn simple_root_coefficients(&self, a: &Weight) -> Vec<Rational64> {
        self.simple_roots
            .iter()
            .zip(&self.fundamental_weights)
            .map(|(s, om)| a.dot(om) * 2 / s.dot(s))
            .collect()
    }
}

type SystemCache = RwLock<HashMap<(RootKind, usize), Arc<RootSystem>>>;

fn cache() -> &'static SystemCache {
    static CACHE: OnceLock<SystemCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Build (or fetch from cache) the root system of the given type.
pub fn build_root_system(kind: RootKind, rank: usize) -> Result<Arc<RootSystem>, RootDataError> {
    let valid = match kind {
        RootKind::A | RootKind::C => rank >= 1,
        RootKind::B | RootKind::D => rank >= 2,
        other => other.fixed_rank() == Some(rank),
    };
    if !valid {
        return Err(RootDataError::UnsupportedType {
            kind: kind.to_string(),
            rank,
        });
    }
    if let Some(rs) = cache().read().expect("cache poisoned").get(&(kind, rank)) {
        return Ok(rs.clone());
    }
    let rs = Arc::new(construct(kind, rank));
    Ok(cache()
        .write()
        .expect("cache poisoned")
        .entry((kind, rank))
        .or_insert(rs)
        .clone())
}

fn signed_pairs(dim: usize, upto: usize) -> Vec<Weight> {
    let mut out = Vec::new();
    for i in 0..upto {
        for j in (i + 1)..upto {
            for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let mut v = vec![0i64; dim];
                v[i] = si;
                v[j] = sj;
                out.push(Weight::from_ints(&v));
            }
        }
    }
    out
}

fn half_vectors(dim: usize, minus_parity: Option<usize>) -> Vec<Weight> {
    let mut out = Vec::new();
    for mask in 0..(1u32 << dim) {
        let minus = mask.count_ones() as usize;
        if let Some(p) = minus_parity {
            if minus % 2 != p {
                continue;
            }
        }
        let v = (0..dim)
            .map(|i| {
                if mask >> i & 1 == 1 {
                    r(-1, 2)
                } else {
                    r(1, 2)
                }
            })
            .collect();
        out.push(Weight(v));
    }
    out
}

fn e8_simple() -> Vec<Weight> {
    let mut a1 = vec![r(-1, 2); 8];
    a1[0] = r(1, 2);
    a1[7] = r(1, 2);
    let mut simple = vec![Weight(a1), Weight::from_ints(&[1, 1, 0, 0, 0, 0, 0, 0])];
    for i in 0..6 {
        let mut v = vec![0i64; 8];
        v[i] = -1;
        v[i + 1] = 1;
        simple.push(Weight::from_ints(&v));
    }
    simple
}

fn construct(kind: RootKind, n: usize) -> RootSystem {
    let (ambient_dim, roots, simple_roots): (usize, Vec<Weight>, Vec<Weight>) = match kind {
        RootKind::A => {
            let d = n + 1;
            let mut roots = Vec::new();
            for i in 0..d {
                for j in 0..d {
                    if i != j {
                        roots.push(&Weight::unit(d, i) - &Weight::unit(d, j));
                    }
                }
            }
            let simple = (0..n)
                .map(|i| &Weight::unit(d, i) - &Weight::unit(d, i + 1))
                .collect();
            (d, roots, simple)
        }
        RootKind::B | RootKind::C | RootKind::D => {
            let mut roots = signed_pairs(n, n);
            let short = match kind {
                RootKind::B => Some(1),
                RootKind::C => Some(2),
                _ => None,
            };
            if let Some(c) = short {
                for i in 0..n {
                    let e = Weight::unit(n, i).scale(Rational64::from_integer(c));
                    roots.push(-&e);
                    roots.push(e);
                }
            }
            let mut simple: Vec<Weight> = (0..n - 1)
                .map(|i| &Weight::unit(n, i) - &Weight::unit(n, i + 1))
                .collect();
            simple.push(match kind {
                RootKind::B => Weight::unit(n, n - 1),
                RootKind::C => Weight::unit(n, n - 1).scale(r(2, 1)),
                _ => &Weight::unit(n, n - 2) + &Weight::unit(n, n - 1),
            });
            (n, roots, simple)
        }
        RootKind::E6 | RootKind::E7 | RootKind::E8 => {
            let mut e8 = signed_pairs(8, 8);
            e8.extend(half_vectors(8, Some(0)));
            let mut ortho: Vec<Weight> = Vec::new();
            if kind != RootKind::E8 {
                ortho.push(Weight::from_ints(&[0, 0, 0, 0, 0, 0, 1, 1]));
            }
            if kind == RootKind::E6 {
                ortho.push(Weight::from_ints(&[0, 0, 0, 0, 0, 1, -1, 0]));
            }
            let roots = e8
                .into_iter()
                .filter(|a| ortho.iter().all(|o| a.dot(o).is_zero()))
                .collect();
            let simple = e8_simple().into_iter().take(n).collect();
            (8, roots, simple)
        }
        RootKind::F4 => {
            let mut roots = signed_pairs(4, 4);
            for i in 0..4 {
                roots.push(Weight::unit(4, i));
                roots.push(-&Weight::unit(4, i));
            }
            roots.extend(half_vectors(4, None));
            let simple = vec![
                Weight::from_ints(&[0, 1, -1, 0]),
                Weight::from_ints(&[0, 0, 1, -1]),
                Weight::from_ints(&[0, 0, 0, 1]),
                Weight(vec![r(1, 2), r(-1, 2), r(-1, 2), r(-1, 2)]),
            ];
            (4, roots, simple)
        }
        RootKind::G2 => {
            let mut roots = Vec::new();
            for i in 0..3 {
                for j in 0..3 {
                    if i != j {
                        roots.push(&Weight::unit(3, i) - &Weight::unit(3, j));
                    }
                }
                let mut long = vec![-1i64; 3];
                long[i] = 2;
                let l = Weight::from_ints(&long);
                roots.push(-&l);
                roots.push(l);
            }
            let simple = vec![
                Weight::from_ints(&[1, -1, 0]),
                Weight::from_ints(&[-2, 1, 1]),
            ];
            (3, roots, simple)
        }
    };
    let fundamental_weights = fundamental_weights(&simple_roots);
    let mut rs = RootSystem {
        kind,
        rank: n,
        ambient_dim,
        roots,
        positive_roots: Vec::new(),
        simple_roots,
        fundamental_weights,
    };
    rs.roots.sort();
    rs.roots.dedup();
    let positive: Vec<Weight> = rs
        .roots
        .iter()
        .filter(|a| {
            rs.simple_root_coefficients(a)
                .iter()
                .all(|c| !c.is_negative())
        })
        .cloned()
        .collect();
    rs.positive_roots = positive;
    rs
}

/// Solve for `ω_j` in the span of the simple roots with `⟨ω_j, α_i^∨⟩ = δ_ij`.
fn fundamental_weights(simple: &[Weight]) -> Vec<Weight> {
    let n = simple.len();
    let dim = simple[0].dim();
    // Gram matrix G_ab = (α_a, α_b); ω_j = Σ_k M_jk α_k with M = diag(|α_j|²/2) G^{-1}.
    let g: Vec<Vec<Rational64>> = simple
        .iter()
        .map(|a| simple.iter().map(|b| a.dot(b)).collect())
        .collect();
    let ginv = invert(&g);
    (0..n)
        .map(|j| {
            let half = simple[j].dot(&simple[j]) / 2;
            let mut w = Weight::zero(dim);
            for (k, ak) in simple.iter().enumerate() {
                w = &w + &ak.scale(half * ginv[j][k]);
            }
            w
        })
        .collect()
}

fn invert(m: &[Vec<Rational64>]) -> Vec<Vec<Rational64>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    Rational64::one()
                } else {
                    Rational64::zero()
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&i| !a[i][col].is_zero())
            .expect("Gram matrix of simple roots is nonsingular");
        a.swap(col, piv);
        let p = a[col][col];
        for x in a[col].iter_mut() {
            *x /= p;
        }
        for i in 0..n {
            if i != col && !a[i][col].is_zero() {
                let f = a[i][col];
                let pivot_row = a[col].clone();
                for (x, y) in a[i].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    a.into_iter().map(|row| row[n..].to_vec()).collect()
}

/// Witness that no torus element satisfies (⋆) for `G/P_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityObstruction {
    pub kind: RootKind,
    pub node: usize,
    pub dim_x: usize,
    /// Order of `ω_i` in `Λ / Q_i`.
    pub omega_order: u64,
}

/// Fires when `dim X` is odd and `ω_i` has odd order modulo the lattice spanned by the
/// roots of the same length as `α_i`.
pub fn parity_obstruction(
    rs: &RootSystem,
    i: usize,
) -> Result<Option<ParityObstruction>, RootDataError> {
    let dim_x = rs.dim_x(i)?;
    let gens: Vec<Vec<i64>> = rs
        .roots_of_length_of(i)
        .iter()
        .map(|a| {
            rs.coroot_coordinates(a)
                .into_iter()
                .map(|c| {
                    assert!(c.is_integer());
                    *c.numer()
                })
                .collect()
        })
        .collect();
    let omega_order = order_modulo_lattice(&gens, i - 1, rs.rank)
        .expect("roots of one length span the weight space");
    if dim_x % 2 == 1 && omega_order % 2 == 1 {
        Ok(Some(ParityObstruction {
            kind: rs.kind,
            node: i,
            dim_x,
            omega_order,
        }))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_types() -> Vec<(RootKind, usize)> {
        let mut v = Vec::new();
        for n in 1..=7 {
            v.push((RootKind::A, n));
            v.push((RootKind::C, n));
        }
        for n in 2..=7 {
            v.push((RootKind::B, n));
            v.push((RootKind::D, n));
        }
        for k in [
            RootKind::E6,
            RootKind::E7,
            RootKind::E8,
            RootKind::F4,
            RootKind::G2,
        ] {
            v.push((k, k.fixed_rank().unwrap()));
        }
        v
    }

    fn expected_root_count(kind: RootKind, n: usize) -> usize {
        match kind {
            RootKind::A => n * (n + 1),
            RootKind::B | RootKind::C => 2 * n * n,
            RootKind::D => 2 * n * (n - 1),
            RootKind::E6 => 72,
            RootKind::E7 => 126,
            RootKind::E8 => 240,
            RootKind::F4 => 48,
            RootKind::G2 => 12,
        }
    }

    #[test]
    fn root_counts_and_negation_closure() {
        for (k, n) in all_types() {
            let rs = build_root_system(k, n).unwrap();
            assert_eq!(rs.roots.len(), expected_root_count(k, n), "{k}{n}");
            assert_eq!(rs.positive_roots.len() * 2, rs.roots.len(), "{k}{n}");
            for a in &rs.roots {
                assert!(rs.roots.contains(&-a));
            }
        }
        assert_eq!(build_root_system(RootKind::A, 2).unwrap().roots.len(), 6);
        assert_eq!(build_root_system(RootKind::D, 4).unwrap().roots.len(), 24);
        assert_eq!(build_root_system(RootKind::E6, 6).unwrap().roots.len(), 72);
    }

    #[test]
    fn fundamental_weights_are_dual_to_coroots() {
        for (k, n) in all_types() {
            let rs = build_root_system(k, n).unwrap();
            for i in 1..=n {
                for j in 1..=n {
                    let a = rs.alpha(i);
                    let v = rs.omega(j).dot(a) * 2 / a.dot(a);
                    let want = if i == j { 1 } else { 0 };
                    assert_eq!(v, Rational64::from_integer(want), "{k}{n} {i} {j}");
                }
            }
        }
    }

    #[test]
    fn simple_roots_are_positive_and_coefficients_integral() {
        for (k, n) in all_types() {
            let rs = build_root_system(k, n).unwrap();
            for a in &rs.roots {
                assert!(rs
                    .simple_root_coefficients(a)
                    .iter()
                    .all(|c| c.is_integer()));
            }
            for s in &rs.simple_roots {
                assert!(rs.positive_roots.contains(s));
            }
        }
    }

    #[test]
    fn bourbaki_fundamental_weights() {
        let f4 = build_root_system(RootKind::F4, 4).unwrap();
        assert_eq!(f4.omega(1), &Weight::from_ints(&[1, 1, 0, 0]));
        assert_eq!(f4.omega(4), &Weight::from_ints(&[1, 0, 0, 0]));
        let g2 = build_root_system(RootKind::G2, 2).unwrap();
        assert_eq!(g2.omega(1), &Weight::from_ints(&[0, -1, 1]));
        assert_eq!(g2.omega(2), &Weight::from_ints(&[-1, -1, 2]));
        let d5 = build_root_system(RootKind::D, 5).unwrap();
        assert_eq!(d5.omega(5), &Weight::half_sum(5));
        let e8 = build_root_system(RootKind::E8, 8).unwrap();
        assert_eq!(e8.omega(8), &Weight::from_ints(&[0, 0, 0, 0, 0, 0, 1, 1]));
    }

    #[test]
    fn n_index_examples_and_closed_forms() {
        let a4 = build_root_system(RootKind::A, 4).unwrap();
        assert_eq!(a4.n_index(2).unwrap(), 5);
        assert_eq!(
            build_root_system(RootKind::E6, 6)
                .unwrap()
                .n_index(1)
                .unwrap(),
            12
        );
        assert_eq!(
            build_root_system(RootKind::E7, 7)
                .unwrap()
                .n_index(7)
                .unwrap(),
            18
        );
        let f4 = build_root_system(RootKind::F4, 4).unwrap();
        assert_eq!(f4.n_index(2).unwrap(), 5);
        assert_eq!(f4.n_index(3).unwrap(), 7);
        for n in 2..=7u64 {
            let nn = n as usize;
            let a = build_root_system(RootKind::A, nn).unwrap();
            let b = build_root_system(RootKind::B, nn).unwrap();
            let c = build_root_system(RootKind::C, nn).unwrap();
            for i in 1..=n {
                let ii = i as usize;
                assert_eq!(a.n_index(ii).unwrap(), n + 1);
                let want_b = if i < n { 2 * n - i } else { 2 * n };
                assert_eq!(b.n_index(ii).unwrap(), want_b, "B{n} {i}");
                assert_eq!(c.n_index(ii).unwrap(), 2 * n - i + 1, "C{n} {i}");
            }
            if n >= 3 {
                let d = build_root_system(RootKind::D, nn).unwrap();
                for i in 1..=n {
                    let want = if i + 1 < n { 2 * n - i - 1 } else { 2 * n - 2 };
                    assert_eq!(d.n_index(i as usize).unwrap(), want, "D{n} {i}");
                }
            }
        }
    }

    #[test]
    fn dimensions_match_classical_formulas() {
        for n in 2..=6usize {
            let b = build_root_system(RootKind::B, n).unwrap();
            let c = build_root_system(RootKind::C, n).unwrap();
            for i in 1..n {
                assert_eq!(b.dim_x(i).unwrap(), i * (i + 1) / 2 + 2 * i * (n - i));
                assert_eq!(c.dim_x(i).unwrap(), i * (i + 1) / 2 + 2 * i * (n - i));
            }
            assert_eq!(b.dim_x(n).unwrap(), n * (n + 1) / 2);
            if n >= 3 {
                let d = build_root_system(RootKind::D, n).unwrap();
                for i in 1..n - 1 {
                    assert_eq!(d.dim_x(i).unwrap(), i * (i - 1) / 2 + 2 * i * (n - i));
                }
                assert_eq!(d.dim_x(n).unwrap(), n * (n - 1) / 2);
            }
        }
        let e7 = build_root_system(RootKind::E7, 7).unwrap();
        assert_eq!(e7.dim_x(7).unwrap(), 27);
    }

    #[test]
    fn tangent_weight_sum_is_proportional_to_omega() {
        for (k, n) in all_types() {
            let rs = build_root_system(k, n).unwrap();
            for i in 1..=n {
                let total = rs
                    .positive_roots_against(i)
                    .iter()
                    .fold(Weight::zero(rs.ambient_dim), |acc, a| &acc - a);
                let expect = rs
                    .omega(i)
                    .scale(-Rational64::from_integer(rs.n_index(i).unwrap() as i64));
                assert_eq!(total, expect, "{k}{n} node {i}");
            }
        }
    }

    #[test]
    fn parity_examples() {
        let g2 = build_root_system(RootKind::G2, 2).unwrap();
        assert!(parity_obstruction(&g2, 1).unwrap().is_some());
        let f4 = build_root_system(RootKind::F4, 4).unwrap();
        assert!(parity_obstruction(&f4, 1).unwrap().is_some());
        let a3 = build_root_system(RootKind::A, 3).unwrap();
        assert!(parity_obstruction(&a3, 1).unwrap().is_none());
    }

    #[test]
    fn invalid_types_are_rejected() {
        assert!(build_root_system(RootKind::E6, 7).is_err());
        assert!(build_root_system(RootKind::B, 1).is_err());
        assert!(build_root_system(RootKind::A, 0).is_err());
        let a2 = build_root_system(RootKind::A, 2).unwrap();
        assert!(a2.n_index(3).is_err());
    }
}
