use masa::{classify_pt, validate_masa, CatalogName, MasaParams, MasaSpec, SignedPermutation};
use numeric_core::{fmt_rational, BigRational, Scalar};
use phase_space::{PhasePoly, PhaseRational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use reduction::{
    build_hamiltonian, check_conservation, degenerate_hamiltonian, displayed_potential, jacobian_check, racah_structure_report,
    sum_relation, verify_casimir_projection, verify_homomorphism, verify_pt_invariance, verify_relation, verify_zhat, Reducer,
    ReductionError,
};
use serde_json::{json, Value};

use crate::args::{CliError, RunArgs};
use crate::output::{Check, Report, Status};

const HOMOMORPHISM_POINTS: usize = 30;
const APPENDIX_POINTS: usize = 10;
const APPENDIX_TOL: f64 = 1e-9;

fn catalog_name(masa: &MasaSpec) -> Option<CatalogName> {
    masa.name().and_then(|n| n.parse().ok())
}

fn default_parity(n: usize) -> SignedPermutation {
    let signs: Vec<i8> = (0..n).map(|i| if i + 1 == n { -1 } else { 1 }).collect();
    SignedPermutation::diagonal(&signs).expect("diagonal signs form a parity")
}

fn pt_classification(masa: &MasaSpec) -> Value {
    let (parity, signs) = match (masa.parity(), masa.pt_sign()) {
        (Some(p), Some(s)) => (p.clone(), Ok(s.to_vec())),
        _ => {
            let p = default_parity(masa.n());
            let s = classify_pt(masa, &p);
            (p, s)
        }
    };
    let entries: Vec<i64> = parity.entries().iter().map(|&(c, s)| s as i64 * (c as i64 + 1)).collect();
    match signs {
        Ok(s) => {
            let uniform = masa::uniform_sign(&s);
            json!({ "parity": entries, "signs": s, "uniform": uniform })
        }
        Err(e) => json!({ "parity": entries, "error": e.to_string() }),
    }
}

fn validation_checks(report: &mut Report, masa: &MasaSpec) -> bool {
    let v = validate_masa(masa);
    report.push(Check::new(
        "generator_count",
        Status::from_bool(v.generator_count_ok),
        json!({ "generators": masa.matrices().len(), "n": masa.n() }),
    ));
    let asym: Vec<usize> = v.symmetric.iter().enumerate().filter(|(_, &s)| !s).map(|(i, _)| i + 1).collect();
    report.push(Check::new("symmetric", Status::from_bool(asym.is_empty()), json!({ "non_symmetric": asym })));
    let pairs: Vec<String> = v.noncommuting_pairs.iter().map(|(i, j)| format!("Z{},Z{}", i + 1, j + 1)).collect();
    report.push(Check::new("commutativity", Status::from_bool(pairs.is_empty()), json!({ "noncommuting_pairs": pairs })));
    report.push(Check::new("independence", Status::from_bool(v.independent), json!({ "rank": v.rank })));
    report.result = json!({
        "masa_valid": v.valid(),
        "n": masa.n(),
        "name": masa.name(),
        "nilpotency_orders": v.nilpotency_orders,
        "pt_classification": pt_classification(masa),
    });
    v.valid()
}

pub fn validate(args: &RunArgs) -> Result<Report, CliError> {
    let (masa, _) = args.load_masa()?;
    let mut report = Report::new("validate", args);
    validation_checks(&mut report, &masa);
    report.finish();
    Ok(report)
}

fn witness(w: &Option<(String, Scalar)>) -> Value {
    match w {
        Some((p, v)) => json!({ "point": p, "value": v.to_string() }),
        None => Value::Null,
    }
}

fn k_text(k: &[BigRational]) -> Vec<String> {
    k.iter().map(fmt_rational).collect()
}

fn relation_check(name: &str, res: Result<reduction::RelationReport, ReductionError>) -> Result<Check, CliError> {
    match res {
        Ok(r) => Ok(Check::new(name, Status::Pass, json!({ "relation": r.relation, "trials": r.trials, "resampled": r.resampled }))),
        Err(ReductionError::RelationFailed { relation, point, residual }) => {
            Ok(Check::new(name, Status::Fail, json!({ "relation": relation, "point": point, "residual": residual })))
        }
        Err(e) => Err(e.into()),
    }
}

fn sum_relation_check(args: &RunArgs, cat: CatalogName, params: &MasaParams) -> Result<Check, CliError> {
    if !matches!(cat, CatalogName::Lambda | CatalogName::CartanOd | CatalogName::Nilpotent) {
        return Ok(Check::skipped("sum_relation", "model has no over-completeness relation"));
    }
    let (text, lhs, rhs) = sum_relation(cat.as_str(), params)?;
    let mut check = relation_check("sum_relation", verify_relation(&text, &lhs, &rhs, args.seed, args.mode()))?;
    if cat == CatalogName::Lambda && check.status == Status::Fail {
        let k = |i| PhaseRational::from_poly(PhasePoly::k(3, i));
        let amended = &rhs + &(&k(1) * &k(2)).scale(&Scalar::from_int(4));
        let alt = relation_check("amended", verify_relation(&format!("{text} + 4 k2 k3"), &lhs, &amended, args.seed, args.mode()))?;
        if let Value::Object(m) = &mut check.detail {
            m.insert("amended".into(), json!({ "status": alt.status, "detail": alt.detail }));
        }
    }
    Ok(check)
}

fn casimir_check(args: &RunArgs, cat: CatalogName, params: &MasaParams, n: usize) -> Result<Check, CliError> {
    let k = args.exact_k(n)?;
    let rep = verify_casimir_projection(cat.as_str(), params, &k, args.seed, args.mode())?;
    let printed = rep.printed.as_ref().map(|(m, a)| json!({ "multiplier": m.to_string(), "additive": a.to_string() }));
    let status = Status::from_bool(rep.matches_printed() != Some(false));
    Ok(Check::new(
        "casimir_projection",
        status,
        json!({
            "form": "proj(C2) = multiplier * H + additive",
            "k": k_text(&k),
            "multiplier": rep.multiplier.to_string(),
            "additive": rep.additive.to_string(),
            "expected": printed,
            "points": rep.points,
        }),
    ))
}

fn racah_check(args: &RunArgs, cat: CatalogName, params: &MasaParams, integrals: usize) -> Result<Check, CliError> {
    if !args.racah {
        return Ok(Check::skipped("racah", "not requested (--racah)"));
    }
    if cat != CatalogName::Lambda || integrals < 3 {
        return Ok(Check::skipped("racah", "dependency relation is stated for the lambda model only"));
    }
    let k = args.exact_k(3)?;
    let rep = racah_structure_report(cat.as_str(), params, &k, args.seed, args.mode())?;
    let fits: Vec<Value> = rep
        .fits
        .iter()
        .map(|f| {
            let support: serde_json::Map<String, Value> = f.support().into_iter().map(|(m, c)| (m.to_string(), json!(c.to_string()))).collect();
            json!({ "target": f.target, "points": f.points, "coefficients": support })
        })
        .collect();
    Ok(Check::new(
        "racah",
        Status::from_bool(rep.dependency_holds()),
        json!({
            "k": k_text(&k),
            "points": rep.points,
            "t12_plus_t13_zero": rep.t12_plus_t13,
            "t12_minus_t23_zero": rep.t12_minus_t23,
            "t12_identically_zero": rep.t12_zero,
            "fits": fits,
        }),
    ))
}

pub fn reduce(args: &RunArgs) -> Result<Report, CliError> {
    let (masa, params) = args.load_masa()?;
    let mut report = Report::new("reduce", args);
    let valid = validation_checks(&mut report, &masa);
    let mut result = std::mem::take(&mut report.result);
    if !valid {
        report.result = result;
        report.finish();
        return Ok(report);
    }
    let sys = build_hamiltonian(&masa, &params)?;
    let r = Reducer::new(&masa)?;
    let cat = catalog_name(&masa);
    result["potential"] = json!(sys.potential.normalize().to_string());
    result["hamiltonian"] = json!(sys.hamiltonian.normalize().to_string());
    result["integrals"] = sys
        .integrals
        .iter()
        .map(|t| json!({ "name": t.name, "reduced": t.reduced.normalize().to_string() }))
        .collect();
    if let Some(shown) = cat.map(|c| displayed_potential(c, &params)).transpose()?.flatten() {
        let c = relation_check("potential_form", verify_relation("V = displayed form", &sys.potential, &shown, args.seed, args.mode()))?;
        result["potential_matches_displayed"] = json!(c.status == Status::Pass);
        report.push(c);
    }
    report.result = result;

    let zhat = verify_zhat(&r);
    report.push(Check::new("zhat_eq_k", Status::from_bool(zhat.iter().all(|&b| b)), json!({ "per_generator": zhat })));
    match cat {
        Some(cat) => {
            report.push(casimir_check(args, cat, &params, masa.n())?);
            report.push(sum_relation_check(args, cat, &params)?);
            report.push(racah_check(args, cat, &params, sys.integrals.len())?);
        }
        None => {
            for name in ["casimir_projection", "sum_relation", "racah"] {
                report.push(Check::skipped(name, "not a catalog model"));
            }
        }
    }
    let identities: serde_json::Map<String, Value> = report
        .checks
        .iter()
        .filter(|c| ["zhat_eq_k", "casimir_projection", "sum_relation", "racah"].contains(&c.name.as_str()))
        .map(|c| (c.name.clone(), json!(c.status)))
        .collect();
    report.result["identities"] = Value::Object(identities);
    report.finish();
    Ok(report)
}

fn appendix_checks(report: &mut Report, args: &RunArgs, masa: &MasaSpec) -> Result<(), CliError> {
    let n = masa.n();
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut worst: f64 = 0.0;
    let mut failures = Vec::new();
    let mut by_kind = std::collections::BTreeMap::<String, f64>::new();
    for i in 0..APPENDIX_POINTS {
        let mut x: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let xn = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if xn > 1.0 {
            x.iter_mut().for_each(|v| *v /= xn);
        }
        let mut s: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let sn = s.iter().map(|v| v * v).sum::<f64>().sqrt().max(1e-3);
        s.iter_mut().for_each(|v| *v /= sn);
        let rep = jacobian_check(masa, &x, &s)?;
        for (k, v) in &rep.residuals {
            let e = by_kind.entry(k.clone()).or_insert(0.0);
            *e = e.max(*v);
        }
        worst = worst.max(rep.max_residual());
        if !rep.passes(APPENDIX_TOL) {
            failures.push(i);
        }
    }
    report.tol("appendix", APPENDIX_TOL);
    report.push(Check::new(
        "appendix",
        Status::from_bool(failures.is_empty()),
        json!({ "points": APPENDIX_POINTS, "max_residual": worst, "max_by_identity": by_kind, "failing_points": failures }),
    ));
    Ok(())
}

pub fn verify(args: &RunArgs) -> Result<Report, CliError> {
    let (masa, params) = args.load_masa()?;
    let mut report = Report::new("verify", args);
    let sys = build_hamiltonian(&masa, &params)?;
    let r = Reducer::new(&masa)?;
    let cat = catalog_name(&masa);
    let degenerate = match cat {
        Some(CatalogName::DegeneratePlus) => Some(1),
        Some(CatalogName::DegenerateMinus) => Some(-1),
        _ => None,
    };
    let h = match degenerate {
        Some(sign) => degenerate_hamiltonian(sign)?,
        None => sys.hamiltonian.clone(),
    };
    if degenerate.is_some() {
        report.result = json!({ "hamiltonian": "p.p + alpha^2 / (s1 - s2 ± i sqrt2 s3)^2, alpha^2 = 4k1^2 + 4k2^2 - 2k3^2" });
    }

    for t in &sys.integrals {
        let rep = check_conservation(&h, &t.reduced, args.seed, args.mode())?;
        report.push(Check::new(
            &format!("conservation:{}", t.name),
            Status::from_bool(rep.holds()),
            json!({ "bracket": "{H, T}_D", "trials": rep.trials, "resampled": rep.resampled, "witness": witness(&rep.witness) }),
        ));
    }

    let hom = verify_homomorphism(&r, HOMOMORPHISM_POINTS, args.seed, args.mode())?;
    let failures: Vec<String> = hom.failures.iter().map(|(i, j)| format!("X{i},X{j}")).collect();
    report.push(Check::new(
        "homomorphism",
        Status::from_bool(hom.holds()),
        json!({ "pairs": hom.pairs, "points": hom.points, "failures": failures }),
    ));

    match &sys.pt {
        Some(pt) => {
            let mut parities = vec![("pt", pt.parity.clone())];
            if degenerate.is_some() {
                parities.push(("swap", SignedPermutation::from_signed_indices(&[2, 1, 3])?));
            }
            for (label, parity) in parities {
                let mut targets = vec![("H".to_string(), &h)];
                if degenerate.is_none() {
                    targets.extend(sys.integrals.iter().map(|t| (t.name.clone(), &t.reduced)));
                }
                for (name, f) in targets {
                    let rep = verify_pt_invariance(f, &parity, args.seed, args.mode())?;
                    report.push(Check::new(
                        &format!("{label}_invariance:{name}"),
                        Status::from_bool(rep.holds()),
                        json!({ "trials": rep.trials, "witness": witness(&rep.witness) }),
                    ));
                }
            }
        }
        None => report.push(Check::skipped("pt_invariance", "no compatible parity")),
    }

    match cat {
        Some(c) => report.push(casimir_check(args, c, &params, masa.n())?),
        None => report.push(Check::skipped("casimir_projection", "not a catalog model")),
    }
    if args.appendix {
        appendix_checks(&mut report, args, &masa)?;
    }
    report.finish();
    Ok(report)
}
