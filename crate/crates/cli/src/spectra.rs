use serde_json::{json, Value};
use spectral::{
    bessel_ode_residual, circle_couplings_from_g, metamorphosis_check, pt_phase_scan, scan_grid, solve_chi_equation,
    solve_periodic_s1, solve_poschl_teller, MetamorphosisCase, MetamorphosisReport, ScanConfig, SpectrumReport, C,
    FD_REALITY_TOL, FOURIER_REALITY_TOL, LOWEST_K,
};

use crate::args::{config, float, require, CliError, RunArgs};
use crate::output::{csv_field, Check, Report, Status};

const FOURIER_MATCH_TOL: f64 = 1e-6;
const FD_MATCH_TOL: f64 = 1e-3;
const BESSEL_TOL: f64 = 1e-10;

fn opt_float(flag: &str, v: &Option<String>, default: f64) -> Result<f64, CliError> {
    v.as_deref().map(|s| float(flag, s)).transpose().map(|x| x.unwrap_or(default))
}

fn c_json(z: C) -> Value {
    json!({ "re": z.re, "im": z.im })
}

fn spectrum_csv(rep: &SpectrumReport) -> String {
    let mut s = String::from("index,re,im,closed_form,deviation\n");
    for (i, e) in rep.eigenvalues.iter().enumerate() {
        let m = rep.matches.iter().find(|m| m.index == i);
        let (cf, dev) = m.map(|m| (format!("{:?}", m.closed_form), format!("{:?}", m.rel_dev))).unwrap_or_default();
        s.push_str(&format!("{i},{:?},{:?},{cf},{dev}\n", e.re, e.im));
    }
    s
}

fn spectrum_json(rep: &SpectrumReport) -> Value {
    json!({
        "model": rep.model,
        "phase": rep.phase.as_str(),
        "lowest_k": rep.lowest_k,
        "max_im": rep.max_im,
        "eigenvalues": rep.eigenvalues.iter().map(|z| c_json(*z)).collect::<Vec<_>>(),
        "matches": rep.matches.iter().map(|m| json!({
            "index": m.index,
            "computed": c_json(m.computed),
            "closed_form": m.closed_form,
            "label": m.label,
            "abs_dev": m.abs_dev,
            "rel_dev": m.rel_dev,
        })).collect::<Vec<_>>(),
        "notes": rep.notes,
    })
}

/// A closed-form claim is made only where matches exist; it covers the
/// deviation and the reality of the lowest levels.
fn spectrum_checks(report: &mut Report, rep: &SpectrumReport, match_tol: f64) {
    if rep.matches.is_empty() {
        report.push(Check::skipped("closed_form_match", "no closed form for these parameters"));
        return;
    }
    report.push(Check::new(
        "closed_form_match",
        Status::from_bool(rep.max_rel_dev() <= match_tol),
        json!({ "max_rel_dev": rep.max_rel_dev(), "levels": rep.matches.len() }),
    ));
    report.push(Check::new("reality", Status::from_bool(rep.max_im <= rep.reality_tol), json!({ "max_im": rep.max_im })));
}

fn residual_csv(rows: &[(String, f64, f64)]) -> String {
    let mut s = String::from("quantity,value,tolerance,status\n");
    for (name, v, tol) in rows {
        s.push_str(&format!("{},{v:?},{tol:?},{}\n", csv_field(name), Status::from_bool(*v <= *tol).as_str()));
    }
    s
}

fn metamorphosis_json(rep: &MetamorphosisReport) -> Value {
    let details: serde_json::Map<String, Value> = rep.details.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
    json!({ "residual": rep.residual, "points": rep.points, "details": details })
}

fn metamorphosis_row(report: &mut Report, name: &str, case: MetamorphosisCase) -> Result<(String, f64, f64), CliError> {
    match metamorphosis_check(case) {
        Ok(rep) => {
            report.push(Check::new(name, Status::Pass, metamorphosis_json(&rep)));
            Ok((name.to_string(), rep.residual, rep.tol))
        }
        Err(spectral::SpectralError::ResidualTooLarge { residual, tol }) => {
            report.push(Check::new(name, Status::Fail, json!({ "residual": residual })));
            Ok((name.to_string(), residual, tol))
        }
        Err(e) => Err(e.into()),
    }
}

pub fn spectrum(args: &RunArgs) -> Result<(Report, Option<String>), CliError> {
    let model = args.model.as_deref().ok_or_else(|| config("--model is required"))?;
    let mut report = Report::new("spectrum", args);
    let k = args.lowest_k.unwrap_or(LOWEST_K);
    let fd = |rep: SpectrumReport| -> SpectrumReport { rescope(rep, k, args.tol_real.unwrap_or(FD_REALITY_TOL)) };
    let csv;
    match model {
        "s1" => {
            let a = float("a", require("a", &args.a)?)?;
            let b = float("b", require("b", &args.b)?)?;
            let (k1, k2) = match (&args.gminus, &args.gplus) {
                (Some(gm), Some(gp)) => circle_couplings_from_g(a, b, float("gminus", gm)?, float("gplus", gp)?)?,
                (None, None) => (float("k1", require("k1", &args.k1)?)?, float("k2", require("k2", &args.k2)?)?),
                _ => return Err(config("give both --gminus and --gplus")),
            };
            let n = args.grid.unwrap_or(512);
            let tol = args.tol_real.unwrap_or(FOURIER_REALITY_TOL);
            let rep = rescope(solve_periodic_s1(a, b, C::from(k1), C::from(k2), n)?, k, tol);
            report.grid = Some(n);
            report.tol("reality", tol);
            report.tol("closed_form_rel", FOURIER_MATCH_TOL);
            spectrum_checks(&mut report, &rep, FOURIER_MATCH_TOL);
            report.result = spectrum_json(&rep);
            report.result["k1"] = json!(k1);
            report.result["k2"] = json!(k2);
            csv = spectrum_csv(&rep);
        }
        "poschl_teller" | "chi" => {
            let n = args.grid.unwrap_or(4096);
            let rep = if model == "chi" {
                let ell = [
                    float("l1", require("l1", &args.l1)?)?,
                    float("l2", require("l2", &args.l2)?)?,
                    float("l3", require("l3", &args.l3)?)?,
                ];
                fd(solve_chi_equation(ell, args.m.unwrap_or(0), n)?)
            } else {
                let gm = float("gminus", require("gminus", &args.gminus)?)?;
                let gp = float("gplus", require("gplus", &args.gplus)?)?;
                fd(solve_poschl_teller(gm, gp, n)?)
            };
            report.grid = Some(n);
            report.tol("reality", rep.reality_tol);
            report.tol("closed_form_rel", FD_MATCH_TOL);
            spectrum_checks(&mut report, &rep, FD_MATCH_TOL);
            report.result = spectrum_json(&rep);
            csv = spectrum_csv(&rep);
        }
        "degenerate" => {
            let alpha = float("alpha", require("alpha", &args.alpha)?)?;
            let q = args.q.ok_or_else(|| config("--q is required"))?;
            let z = opt_float("z", &args.z, 0.5)?;
            let terms = args.terms.unwrap_or(30);
            let r = bessel_ode_residual(C::from(alpha), q, C::from(z), terms)?;
            report.tol("bessel_residual", BESSEL_TOL);
            report.push(Check::new(
                "bessel_ode_residual",
                Status::from_bool(r <= BESSEL_TOL),
                json!({ "residual": r, "alpha": alpha, "q": q, "z": z, "terms": terms, "energy": q * (q + 1) }),
            ));
            let mut rows = vec![("bessel_ode_residual".to_string(), r, BESSEL_TOL)];
            for (sign, name) in [(1, "metamorphosis_plus"), (-1, "metamorphosis_minus")] {
                rows.push(metamorphosis_row(&mut report, name, MetamorphosisCase::Degenerate { sign, alpha, q })?);
            }
            csv = residual_csv(&rows);
        }
        "morse" => {
            let a = float("a", require("a", &args.a)?)?;
            let k1 = float("k1", require("k1", &args.k1)?)?;
            let k2 = float("k2", require("k2", &args.k2)?)?;
            let row = metamorphosis_row(&mut report, "metamorphosis", MetamorphosisCase::Morse { a, k1, k2 })?;
            csv = residual_csv(&[row]);
        }
        other => return Err(config(format!("unknown spectral model {other:?} (s1, poschl_teller, chi, degenerate, morse)"))),
    }
    report.finish();
    Ok((report, Some(csv)))
}

/// Re-derives the reality label with overridden `K` and tolerance.
fn rescope(rep: SpectrumReport, k: usize, tol: f64) -> SpectrumReport {
    let mut out = SpectrumReport::new(&rep.model, rep.params.clone(), rep.grid, rep.eigenvalues.clone(), k, tol);
    out.matches = rep.matches;
    out.notes = rep.notes;
    out.residual = rep.residual;
    out
}

fn parse_range(text: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    match parts.as_slice() {
        [single] => Ok(vec![float("lambda2", single)?]),
        [a, b, s] => Ok(scan_grid(float("lambda2", a)?, float("lambda2", b)?, float("lambda2", s)?)?),
        _ => Err(config(format!("--lambda2 {text:?}: expected start:stop:step"))),
    }
}

pub fn scan(args: &RunArgs) -> Result<(Report, Option<String>), CliError> {
    match args.model.as_deref() {
        Some("lambda") => {}
        Some(other) => return Err(config(format!("scan supports --model lambda, got {other:?}"))),
        None => return Err(config("--model is required")),
    }
    let grid = parse_range(args.lambda2.as_deref().unwrap_or("0.05:0.7:0.05"))?;
    let d = ScanConfig::default();
    let cfg = ScanConfig {
        k: [opt_float("k1", &args.k1, d.k[0])?, opt_float("k2", &args.k2, d.k[1])?, opt_float("k3", &args.k3, d.k[2])?],
        grid: args.grid.unwrap_or(d.grid),
        lowest_k: args.lowest_k.unwrap_or(d.lowest_k),
        tol: args.tol_real.unwrap_or(d.tol),
        bessel_q: args.q.unwrap_or(d.bessel_q),
        bessel_z: opt_float("z", &args.z, d.bessel_z)?,
        bessel_terms: args.terms.unwrap_or(d.bessel_terms),
        mode: args.mode(),
    };
    let reps = pt_phase_scan(&cfg, &grid);
    let mut report = Report::new("scan", args);
    report.grid = Some(cfg.grid);
    report.tol("reality", cfg.tol);
    report.tol("degenerate_lambda2", 1e-12);
    let k = cfg.lowest_k;
    let mut csv = String::from("lambda2,phase,max_im,bessel_residual");
    for i in 0..k {
        csv.push_str(&format!(",e{i}_re,e{i}_im"));
    }
    csv.push('\n');
    let mut points = Vec::new();
    for (l2, rep) in grid.iter().zip(&reps) {
        let res = rep.residual.map(|r| format!("{r:?}")).unwrap_or_default();
        csv.push_str(&format!("{l2},{},{:?},{res}", rep.phase.as_str(), rep.max_im));
        for i in 0..k {
            match rep.eigenvalues.get(i) {
                Some(e) => csv.push_str(&format!(",{:?},{:?}", e.re, e.im)),
                None => csv.push_str(",,"),
            }
        }
        csv.push('\n');
        points.push(json!({
            "lambda2": l2,
            "phase": rep.phase.as_str(),
            "max_im": rep.max_im,
            "bessel_residual": rep.residual,
            "lowest": rep.lowest().iter().map(|z| c_json(*z)).collect::<Vec<_>>(),
            "max_rel_dev": if rep.matches.is_empty() { Value::Null } else { json!(rep.max_rel_dev()) },
            "notes": rep.notes,
        }));
        let failed = rep.notes.iter().any(|n| n.contains("failed"));
        if failed {
            report.push(Check::new(&format!("point:{l2}"), Status::Fail, json!({ "notes": rep.notes })));
        }
    }
    report.result = json!({ "k": cfg.k, "points": points });
    report.finish();
    Ok((report, Some(csv)))
}
