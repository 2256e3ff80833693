use num_integer::Integer;
use serde_json::{json, Value};

use cyclok::collections::{bundle_class, standard_collection, BundleDescriptor, Collection};
use cyclok::congruence::{
    central_orthogonality_check, rank_law_holds, reduce_coefficients, slope_residue_check,
    sum_of_chi_is_unit, LineTable, OrthonormalBasis,
};
use cyclok::cyclotomic::format_rational;
use cyclok::localization::{build_space, gram_matrix, verify_star_direct, LocalizedClass};
use cyclok::rootdata::{
    bounded_star_search, build_root_system, check_star_conditions, construct_t0,
    parity_obstruction, RootDataError, SpaceDescriptor, StarReport, TorusElement,
};
use cyclok::Cyclotomic;

use crate::output::Outcome;
use crate::CliError;

/// Rational values without the field prefix.
pub fn entry(x: &Cyclotomic) -> String {
    match x.to_rational() {
        Some(q) => format_rational(&q),
        None => x.to_string(),
    }
}

pub fn parse_space(s: &str) -> Result<SpaceDescriptor, CliError> {
    s.parse()
        .map_err(|e: RootDataError| CliError::Usage(format!("bad space `{s}`: {e}")))
}

fn star_json(r: &StarReport) -> Value {
    json!({
        "passed": r.passed,
        "order": r.order,
        "failed_roots": r.failed_roots.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
        "weight_power_check": r.weight_power_check,
        "determinant_sign_check": r.determinant_sign_check,
        "violations": r.violations,
    })
}

fn t0_json(t0: &TorusElement) -> Value {
    let base = t0
        .exponents()
        .iter()
        .fold(1i64, |acc, q| acc.lcm(q.denom()));
    let powers: Vec<String> = t0
        .exponents()
        .iter()
        .map(|q| format!("zeta_{base}^{}", (q * base).to_integer()))
        .collect();
    json!({
        "exponents": t0.exponents().iter().map(|q| q.to_string()).collect::<Vec<_>>(),
        "powers": powers,
        "spin_exponent": t0.spin_exponent().map(|q| q.to_string()),
        "order": t0.order(),
    })
}

/// `find-t0` and `star`: the parity obstruction if it fires, otherwise the explicit element
/// (or a bounded search) checked in both forms of (*).
pub fn find_t0(space: &str, order_bound: Option<u64>, show_t0: bool) -> Result<Outcome, CliError> {
    let d = parse_space(space)?;
    let command = if show_t0 { "find-t0" } else { "star" };
    let flag = d.flag_data();
    let rs = match flag {
        Some((kind, rank, _)) => Some(build_root_system(kind, rank).map_err(CliError::usage)?),
        None => None,
    };
    if let (Some(rs), Some((_, _, node))) = (&rs, flag) {
        if let Some(ob) = parity_obstruction(rs, node).map_err(CliError::usage)? {
            let witness = format!(
                "dim X = {} is odd and omega_{} has odd order {} modulo the roots of its length",
                ob.dim_x, ob.node, ob.omega_order
            );
            let mut out = Outcome::new(
                false,
                json!({
                    "command": command,
                    "space": d.to_string(),
                    "passed": false,
                    "obstruction": {
                        "kind": ob.kind.to_string(),
                        "node": ob.node,
                        "dim_x": ob.dim_x,
                        "omega_order": ob.omega_order,
                        "witness": witness,
                    },
                }),
            );
            out.line(format!("{command} {d}: no element satisfies (*)"));
            out.line(format!("  parity obstruction: {witness}"));
            return Ok(out);
        }
    }
    let t0 = match construct_t0(&d) {
        Ok(t0) => t0,
        Err(RootDataError::OddHirzebruchIndex(n)) => {
            let mut out = Outcome::new(
                false,
                json!({
                    "command": command,
                    "space": d.to_string(),
                    "passed": false,
                    "reason": format!("F_{n} has odd index"),
                }),
            );
            out.line(format!(
                "{command} {d}: F_{n} has odd index, no element is constructed"
            ));
            return Ok(out);
        }
        Err(e) => {
            let (Some(rs), Some((_, _, node)), Some(bound)) = (&rs, flag, order_bound) else {
                return Err(CliError::Usage(format!(
                    "no explicit element for {d} ({e}); pass --order-bound to search"
                )));
            };
            let s = bounded_star_search(rs, node, bound).map_err(CliError::usage)?;
            let passed = s.found();
            let witness = s
                .witness
                .as_ref()
                .map(|(n, a)| json!({"order": n, "omega_numerators": a}));
            let mut out = Outcome::new(
                passed,
                json!({
                    "command": command,
                    "space": d.to_string(),
                    "passed": passed,
                    "search": {
                        "order_bound": s.order_bound,
                        "examined": s.examined,
                        "complete": s.complete,
                        "witness": witness,
                    },
                }),
            );
            match &s.witness {
                Some((n, a)) => out.line(format!(
                    "{command} {d}: element of order {n} with omega_j(t) = exp(2 pi i a_j/{n}), a = {a:?}"
                )),
                None => out.line(format!(
                    "{command} {d}: no element of order <= {bound} ({} candidates, complete = {})",
                    s.examined, s.complete
                )),
            }
            return Ok(out);
        }
    };
    let root_form = match (&rs, flag) {
        (Some(rs), Some((_, _, node))) => {
            Some(check_star_conditions(rs, node, &t0).map_err(CliError::usage)?)
        }
        _ => None,
    };
    let direct = build_space(&d).ok().map(|m| verify_star_direct(&m, &t0));
    let passed = root_form.iter().chain(&direct).all(|r| r.passed);
    let mut report = json!({
        "command": command,
        "space": d.to_string(),
        "passed": passed,
        "star": {
            "root_form": root_form.as_ref().map(star_json),
            "direct": direct.as_ref().map(star_json),
        },
    });
    if show_t0 {
        report["t0"] = t0_json(&t0);
    }
    let mut out = Outcome::new(passed, report);
    if show_t0 {
        let t = t0_json(&t0);
        out.line(format!("{command} {d}: order {}", t0.order()));
        let powers: Vec<&str> = t["powers"]
            .as_array()
            .expect("array")
            .iter()
            .filter_map(Value::as_str)
            .collect();
        out.line(format!("  t0 = ({})", powers.join(", ")));
        if let Some(q) = t0.spin_exponent() {
            out.line(format!("  spin coordinate exponent {q}"));
        }
    } else {
        out.line(format!("{command} {d}: t0 of order {}", t0.order()));
    }
    for (name, r) in [("root form", &root_form), ("fixed points", &direct)] {
        match r {
            Some(r) if r.passed => out.line(format!("  (*) {name}: pass")),
            Some(r) => {
                out.line(format!("  (*) {name}: FAIL"));
                for v in &r.violations {
                    out.line(format!("    {v}"));
                }
            }
            None => out.line(format!("  (*) {name}: not available")),
        }
    }
    Ok(out)
}

fn user_classes(d: &SpaceDescriptor, bundles: &[String]) -> Result<Collection, CliError> {
    let space = build_space(d).map_err(CliError::usage)?;
    let t0 = construct_t0(d).map_err(CliError::usage)?;
    let mut classes = Vec::new();
    for b in bundles {
        let desc: BundleDescriptor = b
            .parse()
            .map_err(|e| CliError::Usage(format!("bad bundle `{b}`: {e}")))?;
        classes.push(bundle_class(&space, &t0, &desc).map_err(CliError::usage)?);
    }
    Ok(Collection { space, t0, classes })
}

/// Gram matrix; standard collections must give the identity, user lists a Hermitian matrix.
pub fn gram(space: &str, bundles: &[String]) -> Result<Outcome, CliError> {
    let d = parse_space(space)?;
    let standard = bundles.is_empty();
    let c = if standard {
        standard_collection(&d).map_err(CliError::usage)?
    } else {
        user_classes(&d, bundles)?
    };
    let g = gram_matrix(&c.space, &c.t0, &c.classes).map_err(CliError::usage)?;
    let passed = if standard {
        g.is_identity && g.hermitian
    } else {
        g.hermitian
    };
    let entries: Vec<Vec<String>> = g
        .entries
        .iter()
        .map(|row| row.iter().map(entry).collect())
        .collect();
    let mut out = Outcome::new(
        passed,
        json!({
            "command": "gram",
            "space": d.to_string(),
            "t0_order": c.t0.order(),
            "labels": g.labels,
            "entries": entries,
            "hermitian": g.hermitian,
            "identity": g.is_identity,
            "expect_identity": standard,
            "violations": g.violations,
            "passed": passed,
        }),
    );
    let n = g.labels.len();
    out.line(format!(
        "gram {d}: {n}x{n}, identity = {}, hermitian = {}",
        g.is_identity, g.hermitian
    ));
    out.line(format!("  members: {}", g.labels.join(", ")));
    if !passed {
        for v in g.violations.iter().take(10) {
            out.line(format!("  {v}"));
        }
    }
    for (label, row) in g.labels.iter().zip(&entries) {
        out.detail(format!("{label}: [{}]", row.join(", ")));
    }
    Ok(out)
}

fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

/// `k` with `n = p^k`.
fn log_p(n: u64, p: u64) -> Option<u32> {
    let mut k = 0;
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    (m == 1).then_some(k)
}

fn check(name: &str, passed: bool, witness: Option<String>) -> Value {
    json!({ "name": name, "passed": passed, "witness": witness })
}

fn is_signed_unit_vector(reduced: &[u64], p: u64) -> Option<usize> {
    let nonzero: Vec<usize> = (0..reduced.len())
        .filter(|&i| !reduced[i].is_multiple_of(p))
        .collect();
    match nonzero.as_slice() {
        [i] if reduced[*i] == 1 % p || reduced[*i] == p - 1 => Some(*i),
        _ => None,
    }
}

/// Mod-p reductions of member (or user) classes against the standard collection.
pub fn congruence(space: &str, p: u64, bundles: &[String]) -> Result<Outcome, CliError> {
    let d = parse_space(space)?;
    if !is_prime(p) {
        return Err(CliError::Usage(format!("--p {p} is not prime")));
    }
    let c = standard_collection(&d).map_err(CliError::usage)?;
    let order = c.t0.order();
    let k = log_p(order, p).ok_or_else(|| {
        CliError::Usage(format!("t0 on {d} has order {order}, not a power of {p}"))
    })?;
    let basis = match OrthonormalBasis::new(&c.space, &c.t0, &c.classes) {
        Ok(b) => b,
        Err(e) => {
            let mut out = Outcome::new(
                false,
                json!({"command": "congruence", "space": d.to_string(), "p": p, "passed": false, "reason": e.to_string()}),
            );
            out.line(format!("congruence {d}: {e}"));
            return Ok(out);
        }
    };
    let members = bundles.is_empty();
    let targets: Vec<LocalizedClass> = if members {
        c.classes.clone()
    } else {
        user_classes(&d, bundles)?.classes
    };
    let ranks: Vec<u64> = c
        .classes
        .iter()
        .map(|v| v.metadata.rank.expect("standard members have ranks"))
        .collect();
    let table = LineTable::build(&basis, p, order as i64).map_err(CliError::usage)?;
    let mut passed = true;
    let mut classes = Vec::new();
    let mut out_lines = Vec::new();
    for v in &targets {
        let cv = match basis.coefficients(v) {
            Ok(cv) => cv,
            Err(e) => {
                passed = false;
                out_lines.push(format!("  {}: {e}", v.label));
                classes.push(json!({"class": v.label, "error": e.to_string()}));
                continue;
            }
        };
        let reduced = reduce_coefficients(&cv, p).map_err(CliError::usage)?;
        let matched = table.lookup(&reduced).map_err(CliError::usage)?;
        let mut checks = Vec::new();
        if let Some(rk) = v.metadata.rank {
            let ok = rank_law_holds(&reduced, &ranks, rk, p);
            checks.push(check(
                "rank_law",
                ok,
                (!ok).then(|| format!("sum rho(a_i) rk(E_i) differs from rk = {rk} mod {p}")),
            ));
            let bad = v
                .values
                .iter()
                .zip(&c.space.fixed_points)
                .find_map(|(x, pt)| match x.reduce_mod_p(p) {
                    Ok(r) if r == rk % p => None,
                    Ok(r) => Some(format!("rho(v_{}) = {r}, rk = {rk}", pt.label)),
                    Err(e) => Some(format!("v_{}: {e}", pt.label)),
                });
            checks.push(check("rho_law", bad.is_none(), bad));
        }
        if members {
            let unit = is_signed_unit_vector(&reduced, p);
            checks.push(check(
                "signed_unit",
                unit.is_some(),
                unit.is_none()
                    .then(|| format!("reduced coefficients {reduced:?}")),
            ));
            let ok = sum_of_chi_is_unit(&reduced, p);
            checks.push(check(
                "sum_of_chi",
                ok,
                (!ok).then(|| format!("sum of reduced coefficients is not +-1 mod {p}")),
            ));
        }
        let ok = checks.iter().all(|c| c["passed"] == true);
        passed &= ok;
        out_lines.push(format!(
            "  {}: reduced {:?}, match {}{}",
            v.label,
            reduced,
            match &matched {
                Some((l, s)) => format!("{}{l}", if *s > 0 { "+" } else { "-" }),
                None => "none".into(),
            },
            if ok { "" } else { ", FAIL" }
        ));
        classes.push(json!({
            "basis": basis.labels(),
            "class": v.label,
            "coefficients": cv.coeffs.iter().map(entry).collect::<Vec<_>>(),
            "reduced": reduced,
            "match": matched.map(|(label, sign)| json!({"label": label, "sign": sign})),
            "checks": checks,
        }));
    }
    let central =
        central_orthogonality_check(&c.space, &c.t0, &c.classes).map_err(CliError::usage)?;
    passed &= central.passed;
    let slopes = if matches!(d, SpaceDescriptor::Projective { .. }) {
        let rows: Vec<(String, u64, i64)> = c
            .classes
            .iter()
            .map(|v| {
                (
                    v.label.clone(),
                    v.metadata.rank.unwrap_or(1),
                    v.metadata.degree.as_ref().map_or(0, |d| d[0]),
                )
            })
            .collect();
        match slope_residue_check(&rows, p, k) {
            Ok(s) => {
                let ok = s.complete && s.rank_violations.is_empty();
                passed &= ok;
                json!({
                    "modulus": s.modulus,
                    "slopes": s.slopes,
                    "complete": s.complete,
                    "collisions": s.collisions,
                    "rank_violations": s.rank_violations,
                    "passed": ok,
                })
            }
            Err(e) => {
                passed = false;
                json!({"passed": false, "error": e.to_string()})
            }
        }
    } else {
        Value::Null
    };
    let mut out = Outcome::new(
        passed,
        json!({
            "command": "congruence",
            "space": d.to_string(),
            "p": p,
            "k": k,
            "classes": classes,
            "central": {
                "blocks": central.blocks.iter().map(|(l, ix)| json!({"character": l, "members": ix})).collect::<Vec<_>>(),
                "block_sizes": central.block_sizes,
                "violations": central.violations.iter().map(|(i, j, h)| json!([i, j, entry(h)])).collect::<Vec<_>>(),
                "passed": central.passed,
            },
            "slopes": slopes,
            "passed": passed,
        }),
    );
    out.line(format!("congruence {d} mod {p} (t0 of order {p}^{k})"));
    for l in out_lines {
        out.line(l);
    }
    out.line(format!(
        "  central blocks {:?}, orthogonal = {}",
        central.block_sizes, central.passed
    ));
    if let Some(s) = out.report["slopes"].get("slopes") {
        let line = format!(
            "  slopes {s}, complete = {}",
            out.report["slopes"]["complete"]
        );
        out.line(line);
    }
    Ok(out)
}
