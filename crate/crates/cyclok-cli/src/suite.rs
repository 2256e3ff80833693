use std::collections::HashMap;
use std::fmt;
use std::thread;

use clap::ValueEnum;
use num_integer::binomial;
use num_rational::Rational64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

use cyclok::collections::{
    beilinson_collection, box_partitions, bundle_class, hirzebruch_collection, kapranov_collection,
    product_collection, quadric_collection, schur_class, standard_collection, BundleDescriptor,
    Collection, CollectionError, SpinorSign,
};
use cyclok::congruence::{
    central_orthogonality_check, coprime_to, hook_content_rank, reduce_coefficients,
    slope_residue_check, sum_of_chi_is_unit, LineTable, OrthonormalBasis,
};
use cyclok::localization::{
    build_space, gram_matrix, involution, realness_check, verify_star_direct, LocalizedClass,
    Localizer, SpaceModel,
};
use cyclok::rootdata::{
    build_root_system, check_star_conditions, construct_t0, parity_obstruction, r,
    verify_e_series_solution, RootKind, SpaceDescriptor, TorusElement,
};
use cyclok::{classify_unit_vector, Cyclotomic, UnitVectorClass};

use crate::output::Outcome;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Family {
    Projective,
    Grassmannian,
    Quadric,
    Hirzebruch,
    Product,
    Flag,
    Arithmetic,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.to_possible_value().expect("no skipped variants");
        f.write_str(s.get_name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Fault {
    /// Negate the first localized value of `S+` (or `S` on odd quadrics).
    SpinorSign,
}

impl fmt::Display for Fault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("spinor-sign")
    }
}

fn family_of(d: &SpaceDescriptor) -> Family {
    match d {
        SpaceDescriptor::Projective { .. } => Family::Projective,
        SpaceDescriptor::Grassmannian { .. } => Family::Grassmannian,
        SpaceDescriptor::QuadricEven { .. } | SpaceDescriptor::QuadricOdd { .. } => Family::Quadric,
        SpaceDescriptor::Hirzebruch { .. } => Family::Hirzebruch,
        SpaceDescriptor::Product(_) => Family::Product,
        SpaceDescriptor::Flag {
            kind: RootKind::A,
            rank,
            node,
        } if *node == 1 || node == rank => Family::Projective,
        SpaceDescriptor::Flag {
            kind: RootKind::A, ..
        } => Family::Grassmannian,
        _ => Family::Flag,
    }
}

type Verdict = Result<String, String>;

struct Ctx {
    fault: Option<Fault>,
}

impl Ctx {
    fn corrupt(&self, v: &mut LocalizedClass) {
        if self.fault == Some(Fault::SpinorSign) && (v.label == "spinor+" || v.label == "spinor") {
            v.values[0] = -&v.values[0];
        }
    }

    fn collection(&self, c: Result<Collection, CollectionError>) -> Result<Collection, String> {
        let mut c = c.map_err(|e| e.to_string())?;
        for v in &mut c.classes {
            self.corrupt(v);
        }
        Ok(c)
    }

    fn bundle(
        &self,
        space: &SpaceModel,
        t0: &TorusElement,
        b: &BundleDescriptor,
    ) -> Result<LocalizedClass, String> {
        let mut v = bundle_class(space, t0, b).map_err(|e| format!("{} {b}: {e}", space.name()))?;
        self.corrupt(&mut v);
        Ok(v)
    }
}

type Run = Box<dyn Fn(&Ctx) -> Verdict + Send + Sync>;

struct Case {
    family: Family,
    subject: String,
    run: Run,
}

fn case(
    family: Family,
    subject: impl Into<String>,
    run: impl Fn(&Ctx) -> Verdict + Send + Sync + 'static,
) -> Case {
    Case {
        family,
        subject: subject.into(),
        run: Box::new(run),
    }
}

struct Criterion {
    id: u32,
    name: &'static str,
    cases: Vec<Case>,
}

fn space(s: &str) -> SpaceDescriptor {
    s.parse().unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn gram_identity(c: &Collection) -> Result<(), String> {
    let g = gram_matrix(&c.space, &c.t0, &c.classes).map_err(|e| e.to_string())?;
    if g.is_identity && g.hermitian {
        Ok(())
    } else {
        Err(g
            .violations
            .iter()
            .take(4)
            .cloned()
            .collect::<Vec<_>>()
            .join("; "))
    }
}

fn c1() -> Criterion {
    let cases = (2..=8)
        .map(|n| {
            case(Family::Projective, format!("P^{}", n - 1), move |ctx| {
                let c = ctx.collection(beilinson_collection(n))?;
                gram_identity(&c)?;
                Ok(format!("{n}x{n} identity"))
            })
        })
        .collect();
    Criterion {
        id: 1,
        name: "Beilinson orthonormality",
        cases,
    }
}

fn c2() -> Criterion {
    let cases = [(2, 4, 6), (2, 5, 10), (3, 6, 20)]
        .into_iter()
        .map(|(k, n, size)| {
            case(Family::Grassmannian, format!("G({k},{n})"), move |ctx| {
                let c = ctx.collection(kapranov_collection(k, n))?;
                if c.classes.len() != size {
                    return Err(format!("{} classes, expected {size}", c.classes.len()));
                }
                gram_identity(&c)?;
                Ok(format!("{size}x{size} identity"))
            })
        })
        .collect();
    Criterion {
        id: 2,
        name: "Kapranov orthonormality",
        cases,
    }
}

fn c3() -> Criterion {
    let mut cases: Vec<Case> = (3..=6)
        .map(|dim| {
            case(Family::Quadric, format!("Q^{dim}"), move |ctx| {
                let c = ctx.collection(quadric_collection(dim))?;
                gram_identity(&c)?;
                let mut twists = Vec::new();
                for v in c.classes.iter().filter(|v| v.label.starts_with("spinor")) {
                    let t = v
                        .metadata
                        .twist
                        .ok_or_else(|| format!("{}: twist not pinned", v.label))?;
                    twists.push(format!("{} O({t})", v.label));
                }
                Ok(format!("identity; {}", twists.join(", ")))
            })
        })
        .collect();
    cases.push(case(Family::Quadric, "Q^4 vs G(2,4)", |ctx| {
        let q4 = ctx.collection(quadric_collection(4))?;
        let g24 = ctx.collection(kapranov_collection(2, 4))?;
        gram_identity(&q4).map_err(|e| format!("Q^4: {e}"))?;
        gram_identity(&g24).map_err(|e| format!("G(2,4): {e}"))?;
        for v in &q4.classes[1..3] {
            if v.metadata.rank != Some(2) {
                return Err(format!("{} has rank {:?}", v.label, v.metadata.rank));
            }
        }
        Ok("both identity; spinor ranks 2".into())
    }));
    Criterion {
        id: 3,
        name: "quadric orthonormality",
        cases,
    }
}

fn random_bundle(d: &SpaceDescriptor, rng: &mut StdRng) -> BundleDescriptor {
    match d {
        SpaceDescriptor::Projective { .. } => {
            if rng.gen_bool(0.5) {
                BundleDescriptor::Line(vec![rng.gen_range(-8..=8)])
            } else {
                BundleDescriptor::Schur(vec![rng.gen_range(0..=6)])
            }
        }
        SpaceDescriptor::Grassmannian { k, .. } => {
            if rng.gen_bool(0.3) {
                BundleDescriptor::Line(vec![rng.gen_range(-8..=8)])
            } else {
                let mut parts: Vec<u32> = (0..*k).map(|_| rng.gen_range(0..=6)).collect();
                parts.sort_unstable_by(|a, b| b.cmp(a));
                BundleDescriptor::Schur(parts)
            }
        }
        SpaceDescriptor::QuadricEven { .. } => match rng.gen_range(0..4) {
            0 => BundleDescriptor::Spinor(Some(SpinorSign::Plus)),
            1 => BundleDescriptor::Spinor(Some(SpinorSign::Minus)),
            _ => BundleDescriptor::Line(vec![rng.gen_range(-8..=8)]),
        },
        SpaceDescriptor::QuadricOdd { .. } => {
            if rng.gen_bool(0.3) {
                BundleDescriptor::Spinor(None)
            } else {
                BundleDescriptor::Line(vec![rng.gen_range(-8..=8)])
            }
        }
        SpaceDescriptor::Hirzebruch { .. } => {
            BundleDescriptor::Line(vec![rng.gen_range(-6..=6), rng.gen_range(-6..=6)])
        }
        SpaceDescriptor::Product(fs) => {
            BundleDescriptor::Product(fs.iter().map(|f| random_bundle(f, rng)).collect())
        }
        other => panic!("no random bundles on {other}"),
    }
}

fn c4() -> Criterion {
    let spaces = [
        "projective:2",
        "projective:4",
        "projective:8",
        "grassmannian:2:4",
        "grassmannian:2:5",
        "grassmannian:3:6",
        "quadric-odd:3",
        "quadric-even:4",
        "quadric-odd:5",
        "quadric-even:6",
        "hirzebruch:2",
        "hirzebruch:4",
        "prod(hirzebruch:2;projective:2)",
        "prod(projective:2;projective:4)",
    ];
    let cases = spaces
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let d = space(s);
            case(family_of(&d), *s, move |ctx| {
                let model = build_space(&d).map_err(|e| e.to_string())?;
                let t0 = construct_t0(&d).map_err(|e| e.to_string())?;
                let loc = Localizer::new(&model, &t0).map_err(|e| e.to_string())?;
                let mut rng = StdRng::seed_from_u64(400 + i as u64);
                let mut cache: HashMap<BundleDescriptor, LocalizedClass> = HashMap::new();
                for _ in 0..50 {
                    let mut pair = Vec::new();
                    for _ in 0..2 {
                        let b = random_bundle(&d, &mut rng);
                        if !cache.contains_key(&b) {
                            let v = ctx.bundle(&model, &t0, &b)?;
                            cache.insert(b.clone(), v);
                        }
                        pair.push(cache[&b].clone());
                    }
                    let (v, w) = (&pair[0], &pair[1]);
                    let vw = loc.pairing(v, w).map_err(|e| e.to_string())?;
                    let wv = loc.pairing(w, v).map_err(|e| e.to_string())?;
                    if vw != wv.conjugate() {
                        return Err(format!(
                            "H({}, {}) = {vw}, H({}, {}) = {wv}",
                            v.label, w.label, w.label, v.label
                        ));
                    }
                }
                Ok("50 random pairs Hermitian".into())
            })
        })
        .collect();
    Criterion {
        id: 4,
        name: "Hermitian law",
        cases,
    }
}

fn c5() -> Criterion {
    let cases = [(4usize, 2u64, 2u32), (9, 3, 2)]
        .into_iter()
        .map(|(n, p, k)| {
            case(
                Family::Projective,
                format!("P^{} mod {p}^{k}", n - 1),
                move |ctx| {
                    let c = ctx.collection(beilinson_collection(n))?;
                    let members: Vec<(String, u64, i64)> = c
                        .classes
                        .iter()
                        .map(|v| {
                            (
                                v.label.clone(),
                                v.metadata.rank.unwrap_or(0),
                                v.metadata.degree.as_ref().map_or(0, |d| d[0]),
                            )
                        })
                        .collect();
                    let rep = slope_residue_check(&members, p, k).map_err(|e| e.to_string())?;
                    if !rep.complete || !rep.rank_violations.is_empty() {
                        return Err(format!(
                            "slopes {:?}, collisions {:?}, rank violations {:?}",
                            rep.slopes, rep.collisions, rep.rank_violations
                        ));
                    }
                    let basis = OrthonormalBasis::new(&c.space, &c.t0, &c.classes)
                        .map_err(|e| e.to_string())?;
                    for v in &c.classes {
                        let cv = basis.coefficients(v).map_err(|e| e.to_string())?;
                        let red = reduce_coefficients(&cv, p).map_err(|e| e.to_string())?;
                        if !sum_of_chi_is_unit(&red, p) {
                            return Err(format!("{}: reduced coefficients {red:?}", v.label));
                        }
                    }
                    Ok(format!("slopes {:?}", rep.slopes))
                },
            )
        })
        .collect();
    Criterion {
        id: 5,
        name: "projective slopes",
        cases,
    }
}

fn c6() -> Criterion {
    let cases = [3u64, 5, 7]
        .into_iter()
        .map(|p| {
            case(Family::Arithmetic, format!("p = {p}"), move |_| {
                for k in 1..p as usize {
                    let parts = box_partitions(k, p as usize);
                    let want = binomial(p, k as u64) as usize;
                    if parts.len() != want {
                        return Err(format!(
                            "k={k}: {} partitions, C(p,k) = {want}",
                            parts.len()
                        ));
                    }
                    if let Some(l) = parts
                        .iter()
                        .find(|l| !coprime_to(hook_content_rank(l, k), p))
                    {
                        return Err(format!(
                            "k={k}: rank of {l:?} is {}",
                            hook_content_rank(l, k)
                        ));
                    }
                }
                Ok("all box ranks coprime to p".into())
            })
        })
        .collect();
    Criterion {
        id: 6,
        name: "hook-content coprimality",
        cases,
    }
}

fn c7() -> Criterion {
    let cases = vec![
        case(Family::Grassmannian, "G(2,5)", |ctx| {
            let c = ctx.collection(kapranov_collection(2, 5))?;
            let rep = central_orthogonality_check(&c.space, &c.t0, &c.classes)
                .map_err(|e| e.to_string())?;
            if rep.block_sizes != vec![2; 5] || !rep.passed {
                return Err(format!(
                    "blocks {:?}, violations {:?}",
                    rep.block_sizes, rep.violations
                ));
            }
            Ok("5 orthogonal blocks of size 2".into())
        }),
        case(Family::Grassmannian, "G(2,4)", |ctx| {
            let c = ctx.collection(kapranov_collection(2, 4))?;
            for v in &c.classes {
                let rk = v
                    .metadata
                    .rank
                    .ok_or_else(|| format!("{}: no rank", v.label))?;
                let ch = v
                    .metadata
                    .central
                    .as_ref()
                    .ok_or_else(|| format!("{}: no character", v.label))?;
                let m = (ch.values[0] * 4).to_integer();
                if (rk as i64 - m - 1).rem_euclid(2) != 0 {
                    return Err(format!("{}: rk {rk}, m {m}", v.label));
                }
            }
            Ok("rk = m+1 mod 2".into())
        }),
    ];
    Criterion {
        id: 7,
        name: "Grassmannian central blocks",
        cases,
    }
}

fn c8() -> Criterion {
    let mut specs: Vec<(usize, Vec<usize>)> = Vec::new();
    for k in [3usize, 4, 5] {
        specs.push((2 * k - 2, vec![k - 1, k - 1, 1, 1]));
    }
    for k in [2usize, 3, 4] {
        specs.push((2 * k - 1, vec![2 * k - 1, 1]));
    }
    let cases = specs
        .into_iter()
        .map(|(dim, want)| {
            case(Family::Quadric, format!("Q^{dim}"), move |ctx| {
                let c = ctx.collection(quadric_collection(dim))?;
                let rep = central_orthogonality_check(&c.space, &c.t0, &c.classes)
                    .map_err(|e| e.to_string())?;
                if rep.block_sizes != want || !rep.passed {
                    let mixed: Vec<String> = rep
                        .violations
                        .iter()
                        .take(4)
                        .map(|(i, j, h)| {
                            format!("H({}, {}) = {h}", c.classes[*i].label, c.classes[*j].label)
                        })
                        .collect();
                    return Err(format!(
                        "blocks {:?} (expected {want:?}); {}",
                        rep.block_sizes,
                        mixed.join("; ")
                    ));
                }
                Ok(format!("blocks {want:?}"))
            })
        })
        .collect();
    Criterion {
        id: 8,
        name: "quadric central blocks",
        cases,
    }
}

fn c9() -> Criterion {
    fn matching(ctx: &Ctx, c: Result<Collection, CollectionError>) -> Verdict {
        let c = ctx.collection(c)?;
        let basis =
            OrthonormalBasis::new(&c.space, &c.t0, &c.classes).map_err(|e| e.to_string())?;
        let table = LineTable::build(&basis, 2, c.t0.order() as i64).map_err(|e| e.to_string())?;
        let mut matches = Vec::new();
        for v in &c.classes {
            let rk = v
                .metadata
                .rank
                .ok_or_else(|| format!("{}: no rank", v.label))?;
            if rk % 2 == 0 {
                return Err(format!("{}: even rank {rk}", v.label));
            }
            let cv = basis.coefficients(v).map_err(|e| e.to_string())?;
            let red = reduce_coefficients(&cv, 2).map_err(|e| e.to_string())?;
            match table.lookup(&red).map_err(|e| e.to_string())? {
                Some((l, _)) => matches.push(format!("{} ~ {l}", v.label)),
                None => {
                    return Err(format!(
                        "{}: reduction {red:?} matches no line bundle",
                        v.label
                    ))
                }
            }
        }
        Ok(format!("{} members matched", matches.len()))
    }
    let cases = vec![
        case(Family::Hirzebruch, "F_2", |ctx| {
            matching(ctx, hirzebruch_collection(2))
        }),
        case(Family::Hirzebruch, "F_4", |ctx| {
            matching(ctx, hirzebruch_collection(4))
        }),
        case(Family::Product, "F_2 x P^1", |ctx| {
            matching(
                ctx,
                standard_collection(&space("prod(hirzebruch:2;projective:2)")),
            )
        }),
        case(Family::Product, "P^1 x P^3", |ctx| {
            let parts = [beilinson_collection(2), beilinson_collection(4)]
                .into_iter()
                .collect::<Result<Vec<_>, _>>();
            matching(ctx, parts.and_then(|p| product_collection(&p)))
        }),
    ];
    Criterion {
        id: 9,
        name: "mod-2 line-bundle matching",
        cases,
    }
}

fn c10() -> Criterion {
    let mut spaces: Vec<String> = Vec::new();
    for n in 1..=8 {
        for i in 1..=n {
            spaces.push(format!("A:{n}:{i}"));
        }
    }
    for n in 2..=6 {
        spaces.push(format!("B:{n}:1"));
        spaces.push(format!("B:{n}:{n}"));
    }
    for n in 1..=6 {
        spaces.push(format!("C:{n}:1"));
        spaces.push(format!("C:{n}:{n}"));
    }
    for n in 3..=6 {
        for i in [1, n - 1, n] {
            spaces.push(format!("D:{n}:{i}"));
        }
    }
    spaces.dedup();
    spaces.extend((1..=5).map(|k| format!("sg:{k}")));
    spaces.extend((3..=5).map(|k| format!("og:{k}")));
    spaces.extend(
        [
            "quadric-odd:3",
            "quadric-even:4",
            "quadric-odd:5",
            "quadric-even:6",
        ]
        .map(String::from),
    );
    let mut cases: Vec<Case> = spaces
        .into_iter()
        .map(|s| {
            let d = space(&s);
            case(family_of(&d), s, move |_| {
                let t0 = construct_t0(&d).map_err(|e| e.to_string())?;
                let (kind, rank, node) = d.flag_data().ok_or("no flag data")?;
                let rs = build_root_system(kind, rank).map_err(|e| e.to_string())?;
                let root_form = check_star_conditions(&rs, node, &t0).map_err(|e| e.to_string())?;
                let model = build_space(&d).map_err(|e| e.to_string())?;
                let direct = verify_star_direct(&model, &t0);
                if !root_form.passed || !direct.passed {
                    return Err(format!(
                        "t0 = {t0}: root form {:?}, fixed points {:?}",
                        root_form.violations, direct.violations
                    ));
                }
                Ok(format!("both forms pass at order {}", t0.order()))
            })
        })
        .collect();
    let expected: [(RootKind, &'static [usize]); 5] = [
        (RootKind::G2, &[1, 2]),
        (RootKind::F4, &[1, 4]),
        (RootKind::E7, &[1, 3, 4]),
        (RootKind::E8, &[6, 7, 8]),
        (RootKind::E6, &[2, 3, 4, 5]),
    ];
    for (kind, nodes) in expected {
        cases.push(case(Family::Flag, format!("{kind} parity"), move |_| {
            let rank = kind.fixed_rank().ok_or("no fixed rank")?;
            let rs = build_root_system(kind, rank).map_err(|e| e.to_string())?;
            let mut fired = Vec::new();
            for i in 1..=rank {
                if parity_obstruction(&rs, i)
                    .map_err(|e| e.to_string())?
                    .is_some()
                {
                    fired.push(i);
                }
            }
            if fired != nodes {
                return Err(format!("obstruction at {fired:?}, expected {nodes:?}"));
            }
            Ok(format!("obstruction exactly at nodes {nodes:?}"))
        }));
    }
    Criterion {
        id: 10,
        name: "special elements and parity",
        cases,
    }
}

fn c11() -> Criterion {
    let ints = |v: &[i64]| {
        v.iter()
            .map(|&x| Rational64::from_integer(x))
            .collect::<Vec<_>>()
    };
    let solutions: Vec<(RootKind, Vec<Rational64>, Rational64)> = vec![
        (RootKind::E6, ints(&[0, 1, 2, 3, 4]), r(11, 1)),
        (RootKind::E7, ints(&[0, 1, 2, 3, 4, 5]), r(16, 1)),
        (RootKind::E7, ints(&[0, 1, 2, 3, 4, 5]), r(17, 1)),
    ];
    let cases = solutions
        .iter()
        .cloned()
        .map(|(kind, a, c)| {
            let all = solutions.clone();
            let subject = format!(
                "{kind} ({};{c})",
                a.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            );
            case(Family::Flag, subject, move |_| {
                let rep = verify_e_series_solution(kind, &a, c, true).map_err(|e| e.to_string())?;
                if !rep.passed {
                    return Err(format!("{:?}", rep.violations));
                }
                let mut rejected = 0;
                for delta in [r(-1, 1), r(-1, 2), r(1, 2), r(1, 1)] {
                    for i in 0..=a.len() {
                        let mut a2 = a.clone();
                        let mut c2 = c;
                        if i < a.len() {
                            a2[i] += delta;
                        } else {
                            c2 += delta;
                        }
                        let stated = all
                            .iter()
                            .any(|(k, sa, sc)| *k == kind && *sa == a2 && *sc == c2);
                        let rep = verify_e_series_solution(kind, &a2, c2, true)
                            .map_err(|e| e.to_string())?;
                        if rep.passed != stated {
                            return Err(format!(
                                "perturbation {a2:?};{c2}: passed = {}",
                                rep.passed
                            ));
                        }
                        rejected += usize::from(!stated);
                    }
                }
                Ok(format!("verified; {rejected} perturbations fail"))
            })
        })
        .collect();
    Criterion {
        id: 11,
        name: "E-series arithmetic",
        cases,
    }
}

fn expected_order(negative: bool, j: i64, m: i64) -> u64 {
    let mut e = r(j, m);
    if negative {
        e += r(1, 2);
    }
    *(e - e.floor()).denom() as u64
}

fn c12() -> Criterion {
    let cases = vec![case(Family::Arithmetic, "unit vectors", |_| {
        let mut rng = StdRng::seed_from_u64(12);
        for trial in 0..200 {
            let m: usize = rng.gen_range(1..=24);
            let dim: usize = rng.gen_range(1..=8);
            let index = rng.gen_range(0..dim);
            let j = rng.gen_range(0..m as i64);
            let negative = rng.gen_bool(0.5);
            let mut entry = Cyclotomic::zeta_pow(m, j);
            if negative {
                entry = -entry;
            }
            let mut v = vec![Cyclotomic::zero().lift(m); dim];
            v[index] = entry.lift(m);
            let got = classify_unit_vector(&v).map_err(|e| format!("unit trial {trial}: {e}"))?;
            let want = UnitVectorClass::Unit {
                index,
                order: expected_order(negative, j, m as i64),
            };
            if got != want {
                return Err(format!("unit trial {trial}: {got:?}, expected {want:?}"));
            }
        }
        for trial in 0..200 {
            let m: usize = rng.gen_range(1..=24);
            let dim: usize = rng.gen_range(1..=8);
            let mut v = vec![Cyclotomic::zero().lift(m); dim];
            let z = |rng: &mut StdRng| Cyclotomic::zeta_pow(m, rng.gen_range(0..m as i64)).lift(m);
            match rng.gen_range(0..3) {
                0 if dim >= 2 => {
                    let i = rng.gen_range(0..dim);
                    let k = (i + rng.gen_range(1..dim)) % dim;
                    v[i] = z(&mut rng);
                    v[k] = z(&mut rng);
                }
                1 => {
                    let i = rng.gen_range(0..dim);
                    v[i] = &z(&mut rng) * &Cyclotomic::from_int(rng.gen_range(2..5));
                }
                _ => {}
            }
            if let Ok(UnitVectorClass::Unit { .. }) = classify_unit_vector(&v) {
                return Err(format!("non-unit trial {trial} classified as unit"));
            }
        }
        let w = &Cyclotomic::one() + &Cyclotomic::zeta(3);
        let got =
            classify_unit_vector(&[w, Cyclotomic::zero().lift(3)]).map_err(|e| e.to_string())?;
        if got != (UnitVectorClass::Unit { index: 0, order: 6 }) {
            return Err(format!("(1+zeta_3, 0): {got:?}"));
        }
        Ok("200 units, 200 non-units, (1+zeta_3, 0) of order 6".into())
    })];
    Criterion {
        id: 12,
        name: "unit-vector classification",
        cases,
    }
}

fn c13() -> Criterion {
    let cases = [(2usize, 5usize), (3, 6)]
        .into_iter()
        .map(|(k, n)| {
            case(Family::Grassmannian, format!("G({k},{n})"), move |ctx| {
                let c = ctx.collection(kapranov_collection(k, n))?;
                let loc = Localizer::new(&c.space, &c.t0).map_err(|e| e.to_string())?;
                let mut rng = StdRng::seed_from_u64(1300 + n as u64);
                let class = |rng: &mut StdRng| {
                    let mut parts: Vec<u32> =
                        (0..k).map(|_| rng.gen_range(0..=2 * n as u32)).collect();
                    parts.sort_unstable_by(|a, b| b.cmp(a));
                    schur_class(&c.space, &c.t0, &parts).map_err(|e| e.to_string())
                };
                for _ in 0..100 {
                    let v = class(&mut rng)?;
                    let w = class(&mut rng)?;
                    let h = loc.pairing(&v, &w).map_err(|e| e.to_string())?;
                    if h.to_integer().is_none() {
                        return Err(format!("H({}, {}) = {h}", v.label, w.label));
                    }
                }
                Ok("100 random pairings integral".into())
            })
        })
        .collect();
    Criterion {
        id: 13,
        name: "Galois integrality",
        cases,
    }
}

fn c14() -> Criterion {
    let mut specs: Vec<String> = (2..=8).map(|n| format!("projective:{n}")).collect();
    specs.extend(["grassmannian:2:4", "grassmannian:2:5", "grassmannian:3:6"].map(String::from));
    specs.extend((3..=8).map(|d| {
        if d % 2 == 0 {
            format!("quadric-even:{d}")
        } else {
            format!("quadric-odd:{d}")
        }
    }));
    specs.extend(
        [
            "hirzebruch:2",
            "hirzebruch:4",
            "prod(hirzebruch:2;projective:2)",
            "prod(projective:2;projective:4)",
        ]
        .map(String::from),
    );
    let cases = specs
        .into_iter()
        .map(|s| {
            let d = space(&s);
            case(family_of(&d), s, move |ctx| {
                let c = ctx.collection(standard_collection(&d))?;
                let inv = involution(&c.space, &c.t0).map_err(|e| e.to_string())?;
                let zeta = Cyclotomic::zeta(c.t0.order() as usize);
                let mut undetected = Vec::new();
                for v in &c.classes {
                    if !realness_check(&c.space, &inv, v).map_err(|e| e.to_string())? {
                        return Err(format!("{} is not real", v.label));
                    }
                    if realness_check(&c.space, &inv, &v.scale(&zeta)).map_err(|e| e.to_string())? {
                        undetected.push(v.label.clone());
                    }
                }
                if !undetected.is_empty() {
                    return Err(format!(
                        "members real, but zeta_{}-scaled classes stay real: {}",
                        c.t0.order(),
                        undetected.join(", ")
                    ));
                }
                Ok(format!(
                    "{} members real, scaled classes rejected",
                    c.classes.len()
                ))
            })
        })
        .collect();
    Criterion {
        id: 14,
        name: "realness",
        cases,
    }
}

fn criteria() -> Vec<Criterion> {
    vec![
        c1(),
        c2(),
        c3(),
        c4(),
        c5(),
        c6(),
        c7(),
        c8(),
        c9(),
        c10(),
        c11(),
        c12(),
        c13(),
        c14(),
    ]
}

struct CaseResult {
    family: Family,
    subject: String,
    verdict: Verdict,
}

/// Runs the acceptance matrix, criteria in parallel, results ordered by id.
pub fn run(family: Option<Family>, fault: Option<Fault>) -> Outcome {
    let ctx = Ctx { fault };
    let selected: Vec<Criterion> = criteria()
        .into_iter()
        .map(|mut c| {
            c.cases.retain(|k| family.is_none_or(|f| k.family == f));
            c
        })
        .filter(|c| !c.cases.is_empty())
        .collect();
    let results: Vec<Vec<CaseResult>> = thread::scope(|scope| {
        let handles: Vec<_> = selected
            .iter()
            .map(|c| {
                let ctx = &ctx;
                scope.spawn(move || {
                    c.cases
                        .iter()
                        .map(|k| CaseResult {
                            family: k.family,
                            subject: k.subject.clone(),
                            verdict: (k.run)(ctx),
                        })
                        .collect()
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("criterion thread panicked"))
            .collect()
    });
    let mut out = Outcome::new(true, Value::Null);
    let mut entries = Vec::new();
    let mut failed_ids = Vec::new();
    for (c, cases) in selected.iter().zip(&results) {
        let passed = cases.iter().all(|k| k.verdict.is_ok());
        if !passed {
            failed_ids.push(c.id);
        }
        out.line(format!(
            "criterion {:>2} {}  {} ({} cases)",
            c.id,
            if passed { "PASS" } else { "FAIL" },
            c.name,
            cases.len()
        ));
        for k in cases {
            match &k.verdict {
                Ok(d) => out.detail(format!("[{}] {}: {d}", k.family, k.subject)),
                Err(w) => out.line(format!("    FAIL [{}] {}: {w}", k.family, k.subject)),
            }
        }
        entries.push(json!({
            "id": c.id,
            "name": c.name,
            "passed": passed,
            "cases": cases.iter().map(|k| json!({
                "family": k.family.to_string(),
                "subject": k.subject,
                "passed": k.verdict.is_ok(),
                "detail": k.verdict.as_ref().ok(),
                "witness": k.verdict.as_ref().err(),
            })).collect::<Vec<_>>(),
        }));
    }
    let skipped: Vec<u32> = (1..=14)
        .filter(|id| !selected.iter().any(|c| c.id == *id))
        .collect();
    out.passed = failed_ids.is_empty();
    out.line(format!(
        "suite: {} of {} criteria passed{}",
        selected.len() - failed_ids.len(),
        selected.len(),
        if skipped.is_empty() {
            String::new()
        } else {
            format!(", skipped {skipped:?}")
        }
    ));
    out.report = json!({
        "command": "suite",
        "family": family.map(|f| f.to_string()),
        "fault": fault.map(|f| f.to_string()),
        "criteria": entries,
        "failed": failed_ids,
        "skipped": skipped,
        "passed": out.passed,
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families_of_spaces() {
        assert_eq!(family_of(&space("A:3:1")), Family::Projective);
        assert_eq!(family_of(&space("A:3:2")), Family::Grassmannian);
        assert_eq!(family_of(&space("quadric-even:4")), Family::Quadric);
        assert_eq!(family_of(&space("og:4")), Family::Flag);
        assert_eq!(Family::Hirzebruch.to_string(), "hirzebruch");
    }

    #[test]
    fn every_criterion_has_cases() {
        let all = criteria();
        assert_eq!(
            all.iter().map(|c| c.id).collect::<Vec<_>>(),
            (1..=14).collect::<Vec<_>>()
        );
        assert!(all.iter().all(|c| !c.cases.is_empty()));
    }

    #[test]
    fn fault_only_touches_spinors() {
        let ctx = Ctx {
            fault: Some(Fault::SpinorSign),
        };
        let c = ctx.collection(quadric_collection(4)).unwrap();
        let clean = quadric_collection(4).unwrap();
        for (a, b) in c.classes.iter().zip(&clean.classes) {
            assert_eq!(a.values == b.values, a.label != "spinor+", "{}", a.label);
        }
    }
}
