//! The acceptance matrix, one line per criterion. Runs without the libtest harness so
//! the verdicts are always printed.

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::Instant;

use num_integer::binomial;
use num_rational::Rational64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use cyclok::collections::{
    beilinson_collection, box_partitions, bundle_class, hirzebruch_collection, kapranov_collection,
    product_collection, quadric_collection, schur_class, standard_collection, BundleDescriptor,
    Collection, SpinorSign,
};
use cyclok::congruence::{
    central_orthogonality_check, coprime_to, hook_content_rank, reduce_coefficients,
    slope_residue_check, sum_of_chi_is_unit, LineTable, OrthonormalBasis,
};
use cyclok::localization::{
    build_space, gram_matrix, involution, realness_check, verify_star_direct, LocalizedClass,
    Localizer,
};
use cyclok::rootdata::{
    build_root_system, check_star_conditions, construct_t0, parity_obstruction, r,
    verify_e_series_solution, RootKind, SpaceDescriptor,
};
use cyclok::{classify_unit_vector, Cyclotomic, UnitVectorClass};

type Verdict = Result<String, String>;
type Check = (u32, &'static str, fn() -> Verdict);

fn space(s: &str) -> SpaceDescriptor {
    s.parse().unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn gram_identity(c: &Collection) -> Result<(), String> {
    let g = gram_matrix(&c.space, &c.t0, &c.classes).map_err(|e| e.to_string())?;
    if g.is_identity && g.hermitian {
        Ok(())
    } else {
        Err(format!("{}: {}", c.space.name(), g.violations.join("; ")))
    }
}

fn criterion_1() -> Verdict {
    for n in 2..=8 {
        let c = beilinson_collection(n).map_err(|e| e.to_string())?;
        if c.classes.len() != n {
            return Err(format!("P^{}: {} classes", n - 1, c.classes.len()));
        }
        gram_identity(&c)?;
    }
    Ok("Beilinson Gram = identity for n = 2..8".into())
}

fn criterion_2() -> Verdict {
    for (k, n, size) in [(2, 4, 6), (2, 5, 10), (3, 6, 20)] {
        let c = kapranov_collection(k, n).map_err(|e| e.to_string())?;
        if c.classes.len() != size {
            return Err(format!("G({k},{n}): {} classes", c.classes.len()));
        }
        gram_identity(&c)?;
    }
    Ok("G(2,4), G(2,5), G(3,6) Gram = identity".into())
}

fn criterion_3() -> Verdict {
    let mut twists = Vec::new();
    for dim in 3..=6 {
        let c = quadric_collection(dim).map_err(|e| e.to_string())?;
        gram_identity(&c)?;
        for v in c.classes.iter().filter(|v| v.label.starts_with("spinor")) {
            let twist = v
                .metadata
                .twist
                .ok_or_else(|| format!("Q^{dim} {}: no pinned twist", v.label))?;
            let k = if dim % 2 == 0 {
                dim / 2 + 1
            } else {
                dim.div_ceil(2)
            };
            let want = if dim % 2 == 0 {
                1u64 << (k - 2)
            } else {
                1u64 << (k - 1)
            };
            if v.metadata.rank != Some(want) {
                return Err(format!(
                    "Q^{dim} {}: rank {:?}, expected {want}",
                    v.label, v.metadata.rank
                ));
            }
            twists.push(format!("Q^{dim} {} O({twist})", v.label));
        }
    }
    let q4 = quadric_collection(4).map_err(|e| e.to_string())?;
    let g24 = kapranov_collection(2, 4).map_err(|e| e.to_string())?;
    gram_identity(&q4)?;
    gram_identity(&g24)?;
    for v in &q4.classes[1..3] {
        if v.metadata.rank != Some(2) {
            return Err(format!("Q^4 {} has rank {:?}", v.label, v.metadata.rank));
        }
    }
    let g24_rank_two = g24
        .classes
        .iter()
        .filter(|v| v.metadata.rank == Some(2))
        .count();
    if g24_rank_two != 2 {
        return Err(format!("G(2,4) has {g24_rank_two} rank-2 members"));
    }
    Ok(format!(
        "Q^3..Q^6 Gram = identity; Q^4 and G(2,4) agree; twists {}",
        twists.join(", ")
    ))
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

fn criterion_4() -> Verdict {
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
    let mut rng = StdRng::seed_from_u64(4);
    let mut checked = 0;
    for s in spaces {
        let d = space(s);
        let model = build_space(&d).map_err(|e| e.to_string())?;
        let t0 = construct_t0(&d).map_err(|e| e.to_string())?;
        let loc = Localizer::new(&model, &t0).map_err(|e| e.to_string())?;
        let mut cache: HashMap<String, LocalizedClass> = HashMap::new();
        let mut class = |rng: &mut StdRng| -> Result<LocalizedClass, String> {
            let b = random_bundle(&d, rng);
            if let Some(v) = cache.get(&b.to_string()) {
                return Ok(v.clone());
            }
            let v = bundle_class(&model, &t0, &b).map_err(|e| format!("{s} {b}: {e}"))?;
            cache.insert(b.to_string(), v.clone());
            Ok(v)
        };
        for _ in 0..50 {
            let v = class(&mut rng)?;
            let w = class(&mut rng)?;
            let vw = loc.pairing(&v, &w).map_err(|e| e.to_string())?;
            let wv = loc.pairing(&w, &v).map_err(|e| e.to_string())?;
            if vw != wv.conjugate() {
                return Err(format!(
                    "{s}: H({}, {}) = {vw} but H({}, {}) = {wv}",
                    v.label, w.label, w.label, v.label
                ));
            }
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} random pairs over {} spaces are Hermitian",
        spaces.len()
    ))
}

fn criterion_5() -> Verdict {
    let mut notes = Vec::new();
    for (n, p, k) in [(4usize, 2u64, 2u32), (9, 3, 2)] {
        let c = beilinson_collection(n).map_err(|e| e.to_string())?;
        let members: Vec<(String, u64, i64)> = c
            .classes
            .iter()
            .map(|v| {
                (
                    v.label.clone(),
                    v.metadata.rank.expect("rank"),
                    v.metadata.degree.as_ref().expect("degree")[0],
                )
            })
            .collect();
        let rep = slope_residue_check(&members, p, k).map_err(|e| e.to_string())?;
        if !rep.complete || !rep.rank_violations.is_empty() {
            return Err(format!(
                "P^{}: slopes {:?}, collisions {:?}, rank violations {:?}",
                n - 1,
                rep.slopes,
                rep.collisions,
                rep.rank_violations
            ));
        }
        let basis =
            OrthonormalBasis::new(&c.space, &c.t0, &c.classes).map_err(|e| e.to_string())?;
        for v in &c.classes {
            let red = reduce_coefficients(&basis.coefficients(v).map_err(|e| e.to_string())?, p)
                .map_err(|e| e.to_string())?;
            if !sum_of_chi_is_unit(&red, p) {
                return Err(format!(
                    "P^{} {}: reduced coefficients {red:?}",
                    n - 1,
                    v.label
                ));
            }
        }
        notes.push(format!(
            "P^{} mod {}^{k}: slopes {:?}",
            n - 1,
            p,
            rep.slopes
        ));
    }
    Ok(notes.join("; "))
}

fn criterion_6() -> Verdict {
    for p in [3u64, 5, 7] {
        for k in 1..p as usize {
            let parts = box_partitions(k, p as usize);
            let want = binomial(p, k as u64) as usize;
            if parts.len() != want {
                return Err(format!(
                    "p={p} k={k}: {} partitions, C(p,k) = {want}",
                    parts.len()
                ));
            }
            for l in &parts {
                let rank = hook_content_rank(l, k);
                if !coprime_to(rank, p) {
                    return Err(format!("p={p} k={k}: rank of {l:?} is {rank}"));
                }
            }
        }
    }
    Ok("all box ranks coprime to p for p = 3, 5, 7".into())
}

fn criterion_7() -> Verdict {
    let c = kapranov_collection(2, 5).map_err(|e| e.to_string())?;
    let rep =
        central_orthogonality_check(&c.space, &c.t0, &c.classes).map_err(|e| e.to_string())?;
    if rep.block_sizes != vec![2; 5] || !rep.passed {
        return Err(format!(
            "G(2,5): blocks {:?}, violations {:?}",
            rep.block_sizes, rep.violations
        ));
    }
    let g = kapranov_collection(2, 4).map_err(|e| e.to_string())?;
    for v in &g.classes {
        let rk = v.metadata.rank.expect("rank");
        let ch = v.metadata.central.as_ref().expect("character");
        let m = (ch.values[0] * 4).to_integer();
        if (rk as i64 - m - 1).rem_euclid(2) != 0 {
            return Err(format!("G(2,4) {}: rk {rk}, m {m}", v.label));
        }
    }
    Ok("G(2,5) blocks 2,2,2,2,2 orthogonal; G(2,4) rk = m+1 mod 2".into())
}

fn criterion_8() -> Verdict {
    let mut cases: Vec<(usize, Vec<usize>)> = Vec::new();
    for k in [3usize, 4, 5] {
        cases.push((2 * k - 2, vec![k - 1, k - 1, 1, 1]));
    }
    for k in [2usize, 3, 4] {
        cases.push((2 * k - 1, vec![2 * k - 1, 1]));
    }
    for (dim, want) in cases {
        let c = quadric_collection(dim).map_err(|e| e.to_string())?;
        let rep =
            central_orthogonality_check(&c.space, &c.t0, &c.classes).map_err(|e| e.to_string())?;
        if rep.block_sizes != want || !rep.passed {
            return Err(format!(
                "Q^{dim}: blocks {:?} (expected {want:?}), nonzero mixed pairings {:?}",
                rep.block_sizes, rep.violations
            ));
        }
    }
    Ok("Q^4, Q^6, Q^8 blocks (k-1,k-1,1,1); Q^3, Q^5, Q^7 blocks (2k-1,1)".into())
}

fn criterion_9() -> Verdict {
    let collections = [
        hirzebruch_collection(2),
        hirzebruch_collection(4),
        standard_collection(&space("prod(hirzebruch:2;projective:2)")),
        product_collection(&[
            beilinson_collection(2).map_err(|e| e.to_string())?,
            beilinson_collection(4).map_err(|e| e.to_string())?,
        ]),
    ];
    let mut matched = 0;
    for c in collections {
        let c = c.map_err(|e| e.to_string())?;
        let basis =
            OrthonormalBasis::new(&c.space, &c.t0, &c.classes).map_err(|e| e.to_string())?;
        let table = LineTable::build(&basis, 2, c.t0.order() as i64).map_err(|e| e.to_string())?;
        for v in &c.classes {
            let rk = v
                .metadata
                .rank
                .ok_or_else(|| format!("{}: no rank", v.label))?;
            if rk % 2 == 0 {
                return Err(format!("{} {}: even rank {rk}", c.space.name(), v.label));
            }
            let red = reduce_coefficients(&basis.coefficients(v).map_err(|e| e.to_string())?, 2)
                .map_err(|e| e.to_string())?;
            if table.lookup(&red).map_err(|e| e.to_string())?.is_none() {
                return Err(format!(
                    "{} {}: reduction {red:?} matches no line bundle",
                    c.space.name(),
                    v.label
                ));
            }
            matched += 1;
        }
    }
    Ok(format!(
        "{matched} members reduce to line-bundle classes mod 2"
    ))
}

fn criterion_10() -> Verdict {
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
    for k in 1..=5 {
        spaces.push(format!("sg:{k}"));
    }
    for k in 3..=5 {
        spaces.push(format!("og:{k}"));
    }
    for s in [
        "quadric-odd:3",
        "quadric-even:4",
        "quadric-odd:5",
        "quadric-even:6",
    ] {
        spaces.push(s.into());
    }
    spaces.dedup();
    for s in &spaces {
        let d = space(s);
        let t0 = construct_t0(&d).map_err(|e| format!("{s}: {e}"))?;
        let (kind, rank, node) = d.flag_data().expect("flag data");
        let rs = build_root_system(kind, rank).map_err(|e| e.to_string())?;
        let root_form = check_star_conditions(&rs, node, &t0).map_err(|e| e.to_string())?;
        let model = build_space(&d).map_err(|e| e.to_string())?;
        let direct = verify_star_direct(&model, &t0);
        if !root_form.passed || !direct.passed {
            return Err(format!(
                "{s} at {t0}: root form {:?}, direct {:?}",
                root_form.violations, direct.violations
            ));
        }
    }
    let expected: [(RootKind, &[usize]); 4] = [
        (RootKind::G2, &[1, 2]),
        (RootKind::F4, &[1, 4]),
        (RootKind::E7, &[1, 3, 4]),
        (RootKind::E8, &[6, 7, 8]),
    ];
    for (kind, nodes) in expected {
        let rank = kind.fixed_rank().expect("exceptional rank");
        let rs = build_root_system(kind, rank).map_err(|e| e.to_string())?;
        let fired: Vec<usize> = (1..=rank)
            .filter(|&i| parity_obstruction(&rs, i).expect("valid node").is_some())
            .collect();
        if fired != nodes {
            return Err(format!(
                "{kind}: obstruction at {fired:?}, expected {nodes:?}"
            ));
        }
    }
    let rs = build_root_system(RootKind::E6, 6).map_err(|e| e.to_string())?;
    let fired: Vec<usize> = (1..=6)
        .filter(|&i| parity_obstruction(&rs, i).expect("valid node").is_some())
        .collect();
    if fired != [2, 3, 4, 5] {
        return Err(format!(
            "E6: obstruction at {fired:?}, expected [2, 3, 4, 5]"
        ));
    }
    Ok(format!(
        "{} constructions pass both forms of (*); obstruction at G2 1,2; F4 1,4; E7 1,3,4; E8 6,7,8 (and E6 2..5)",
        spaces.len()
    ))
}

fn criterion_11() -> Verdict {
    let ints = |v: &[i64]| {
        v.iter()
            .map(|&x| Rational64::from_integer(x))
            .collect::<Vec<_>>()
    };
    let solutions: Vec<(RootKind, Vec<Rational64>, Rational64, bool)> = vec![
        (RootKind::E6, ints(&[0, 1, 2, 3, 4]), r(11, 1), true),
        (RootKind::E7, ints(&[0, 1, 2, 3, 4, 5]), r(16, 1), true),
        (RootKind::E7, ints(&[0, 1, 2, 3, 4, 5]), r(17, 1), true),
    ];
    let mut rejected = 0;
    for (kind, a, c, w0) in &solutions {
        let rep = verify_e_series_solution(*kind, a, *c, *w0).map_err(|e| e.to_string())?;
        if !rep.passed {
            return Err(format!("{kind} {a:?};{c}: {:?}", rep.violations));
        }
        for delta in [r(-1, 1), r(-1, 2), r(1, 2), r(1, 1)] {
            for i in 0..=a.len() {
                let mut a2 = a.clone();
                let mut c2 = *c;
                if i < a.len() {
                    a2[i] += delta;
                } else {
                    c2 += delta;
                }
                let stated = solutions
                    .iter()
                    .any(|(k, sa, sc, _)| k == kind && *sa == a2 && *sc == c2);
                let rep =
                    verify_e_series_solution(*kind, &a2, c2, *w0).map_err(|e| e.to_string())?;
                if rep.passed != stated {
                    return Err(format!(
                        "{kind} perturbed {a2:?};{c2}: passed = {}",
                        rep.passed
                    ));
                }
                if !stated {
                    rejected += 1;
                }
            }
        }
    }
    Ok(format!(
        "3 stated solutions pass; {rejected} single-entry perturbations fail"
    ))
}

fn expected_order(sign_negative: bool, j: i64, m: i64) -> u64 {
    let mut e = r(j, m);
    if sign_negative {
        e += r(1, 2);
    }
    let e = e - e.floor();
    *e.denom() as u64
}

fn criterion_12() -> Verdict {
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
        let got = classify_unit_vector(&v).map_err(|e| format!("trial {trial}: {e}"))?;
        let want = UnitVectorClass::Unit {
            index,
            order: expected_order(negative, j, m as i64),
        };
        if got != want {
            return Err(format!("trial {trial}: {got:?}, expected {want:?}"));
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
    let got = classify_unit_vector(&[w, Cyclotomic::zero().lift(3)]).map_err(|e| e.to_string())?;
    if got != (UnitVectorClass::Unit { index: 0, order: 6 }) {
        return Err(format!("(1+zeta_3, 0): {got:?}"));
    }
    Ok("200 units classified, 200 non-units rejected, (1+zeta_3, 0) has order 6".into())
}

fn criterion_13() -> Verdict {
    let mut rng = StdRng::seed_from_u64(13);
    let mut checked = 0;
    for (k, n) in [(2usize, 5usize), (3, 6)] {
        let c = kapranov_collection(k, n).map_err(|e| e.to_string())?;
        let loc = Localizer::new(&c.space, &c.t0).map_err(|e| e.to_string())?;
        let random_class = |rng: &mut StdRng| {
            let mut parts: Vec<u32> = (0..k).map(|_| rng.gen_range(0..=2 * n as u32)).collect();
            parts.sort_unstable_by(|a, b| b.cmp(a));
            schur_class(&c.space, &c.t0, &parts).map_err(|e| e.to_string())
        };
        for _ in 0..100 {
            let v = random_class(&mut rng)?;
            let w = random_class(&mut rng)?;
            let h = loc.pairing(&v, &w).map_err(|e| e.to_string())?;
            if h.to_integer().is_none() {
                return Err(format!("G({k},{n}): H({}, {}) = {h}", v.label, w.label));
            }
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} random Schur pairings are rational integers"
    ))
}

fn criterion_14() -> Verdict {
    let mut collections: Vec<Collection> = Vec::new();
    let mut push =
        |c: Result<Collection, cyclok::collections::CollectionError>| -> Result<(), String> {
            collections.push(c.map_err(|e| e.to_string())?);
            Ok(())
        };
    for n in 2..=8 {
        push(beilinson_collection(n))?;
    }
    for (k, n) in [(2, 4), (2, 5), (3, 6)] {
        push(kapranov_collection(k, n))?;
    }
    for dim in 3..=8 {
        push(quadric_collection(dim))?;
    }
    push(hirzebruch_collection(2))?;
    push(hirzebruch_collection(4))?;
    push(standard_collection(&space(
        "prod(hirzebruch:2;projective:2)",
    )))?;
    push(standard_collection(&space(
        "prod(projective:2;projective:4)",
    )))?;
    let mut members = 0;
    let mut undetected = Vec::new();
    for c in &collections {
        let inv = involution(&c.space, &c.t0).map_err(|e| e.to_string())?;
        let zeta = Cyclotomic::zeta(c.t0.order() as usize);
        for v in &c.classes {
            if !realness_check(&c.space, &inv, v).map_err(|e| e.to_string())? {
                return Err(format!("{} {} is not real", c.space.name(), v.label));
            }
            if realness_check(&c.space, &inv, &v.scale(&zeta)).map_err(|e| e.to_string())? {
                undetected.push(format!(
                    "{} {} (N = {})",
                    c.space.name(),
                    v.label,
                    c.t0.order()
                ));
            }
            members += 1;
        }
    }
    if !undetected.is_empty() {
        return Err(format!(
            "all {members} members are real, but scaling by zeta_N keeps these real: {}",
            undetected.join(", ")
        ));
    }
    Ok(format!(
        "{members} members real; every zeta_N-scaled member fails"
    ))
}

fn main() -> ExitCode {
    let criteria: [Check; 14] = [
        (1, "Beilinson orthonormality", criterion_1),
        (2, "Kapranov orthonormality", criterion_2),
        (3, "quadric orthonormality", criterion_3),
        (4, "Hermitian law", criterion_4),
        (5, "projective slopes", criterion_5),
        (6, "hook-content coprimality", criterion_6),
        (7, "Grassmannian central blocks", criterion_7),
        (8, "quadric central blocks", criterion_8),
        (9, "mod-2 line-bundle matching", criterion_9),
        (10, "special elements and parity", criterion_10),
        (11, "E-series arithmetic", criterion_11),
        (12, "unit-vector classification", criterion_12),
        (13, "Galois integrality", criterion_13),
        (14, "realness", criterion_14),
    ];
    let start = Instant::now();
    let mut failed = Vec::new();
    for (id, name, run) in criteria {
        let t = Instant::now();
        match run() {
            Ok(detail) => println!(
                "criterion {id:>2} PASS  {name}: {detail} [{:.2?}]",
                t.elapsed()
            ),
            Err(witness) => {
                println!(
                    "criterion {id:>2} FAIL  {name}: {witness} [{:.2?}]",
                    t.elapsed()
                );
                failed.push(id);
            }
        }
    }
    println!(
        "acceptance: {} of 14 passed in {:.2?}",
        14 - failed.len(),
        start.elapsed()
    );
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("failed criteria: {failed:?}");
        ExitCode::FAILURE
    }
}
