use std::fmt::Write as _;
use std::path::Path;

use qcliff::decomp::{decompose, witt_split, Verdict};
use qcliff::forms::{bivector_from_antisym, signature};
use qcliff::reps::split::{AttemptStatus, SplitReport};
use qcliff::reps::{
    classify_corner, corner_split_search, left_ideal, peirce_corner, solve_u2_generators,
    vacuum_functional, CornerClass, SplitConfig, SplitOutcome, U2Outcome,
};
use qcliff::wick::{
    grading_witness, verify_wick_identities, GradingComparison, WickData, WickTransport,
};
use qcliff::{Blade, CliffordAlgebra, Multivector, Scalar};
use serde_json::{json, Value};

use crate::spec::{Algebra, AlgebraSpecFile};
use crate::{Cli, CliError, Command, Output};

fn load(cli: &Cli, path: &Path) -> Result<Algebra, CliError> {
    AlgebraSpecFile::read(path)?.load(cli.max_dim)
}

fn ok(text: String, json: Value) -> Result<Output, CliError> {
    Ok(Output {
        text,
        json,
        failed: false,
    })
}

fn texts(items: &[Multivector]) -> Vec<String> {
    items.iter().map(|u| u.to_string()).collect()
}

fn split_config(cli: &Cli) -> SplitConfig {
    SplitConfig {
        seeds: cli.seeds,
        tolerance: cli.tol,
        ..SplitConfig::default()
    }
}

pub fn dispatch(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Mul { spec, u, v } => {
            let alg = load(cli, spec)?;
            let cl = CliffordAlgebra::new(alg.ctx.clone());
            let p = cl.product(&alg.element(u)?, &alg.element(v)?)?;
            ok(p.to_string(), json!({ "product": p.to_string() }))
        }
        Command::Table { spec } => table(cli, spec),
        Command::Grade { spec, u, r } => {
            let alg = load(cli, spec)?;
            let x = alg.element(u)?;
            let p = qcliff::wick::a_grade_project(&alg.ctx, &x, *r)?;
            ok(
                p.to_string(),
                json!({ "element": x.to_string(), "grade": r, "projection": p.to_string() }),
            )
        }
        Command::WickCheck { spec } => wick_check(cli, spec),
        Command::GradingDiff { spec_a, spec_b } => {
            let a = load(cli, spec_a)?;
            let b = load(cli, spec_b)?;
            match grading_witness(&a.ctx, &b.ctx)? {
                GradingComparison::Equal => {
                    ok("gradings equal".into(), json!({ "equal": true }))
                }
                GradingComparison::Witness {
                    element,
                    grade,
                    first,
                    second,
                } => ok(
                    format!("witness {element}: <.>_{grade} gives {first} vs {second}"),
                    json!({
                        "equal": false,
                        "element": element.to_string(),
                        "grade": grade,
                        "first": first.to_string(),
                        "second": second.to_string(),
                    }),
                ),
            }
        }
        Command::Witt { spec } => {
            let alg = load(cli, spec)?;
            let sig = signature(&alg.ctx);
            let split = witt_split(&alg.ctx)?;
            ok(
                format!(
                    "signature (p, q, r) = ({}, {}, {})\nM = {:?}\nN = {:?}",
                    sig.p, sig.q, sig.r, split.m_indices, split.n_indices
                ),
                json!({
                    "signature": { "p": sig.p, "q": sig.q, "r": sig.r },
                    "m_indices": split.m_indices,
                    "n_indices": split.n_indices,
                }),
            )
        }
        Command::Periodicity { spec } => {
            let alg = load(cli, spec)?;
            periodicity(&alg)
        }
        Command::Ideal { spec, f } => {
            let alg = load(cli, spec)?;
            let cl = CliffordAlgebra::new(alg.ctx.clone());
            let ideal = left_ideal(&cl, &alg.element(f)?)?;
            let basis = texts(&ideal.basis);
            ok(
                format!("dimension {}\nbasis:\n  {}", ideal.dimension, basis.join("\n  ")),
                json!({
                    "idempotent": ideal.idempotent.to_string(),
                    "dimension": ideal.dimension,
                    "basis": basis,
                }),
            )
        }
        Command::Corner { spec, f } => {
            let alg = load(cli, spec)?;
            let cl = CliffordAlgebra::new(alg.ctx.clone());
            let f = alg.element(f)?;
            let corner = peirce_corner(&cl, &f)?;
            let class = classify_corner(&cl, &f)?;
            let (class_text, class_json) = corner_class(&class);
            let basis = texts(&corner.basis);
            ok(
                format!(
                    "dimension {}\nbasis:\n  {}\n{class_text}",
                    corner.dimension,
                    basis.join("\n  ")
                ),
                json!({
                    "idempotent": f.to_string(),
                    "dimension": corner.dimension,
                    "primitive": corner.is_primitive(),
                    "basis": basis,
                    "class": class_json,
                }),
            )
        }
        Command::Split { spec, f } => {
            let alg = load(cli, spec)?;
            let cl = CliffordAlgebra::new(alg.ctx.clone());
            let report = corner_split_search(&cl, &alg.element(f)?, &split_config(cli))?;
            split_output(&report)
        }
        Command::U2 { spec } => u2(cli, spec),
        Command::Sweep {
            spec,
            param,
            from,
            to,
            step,
            element,
            split,
        } => sweep(cli, spec, param, from, to, step, element.as_deref(), *split),
    }
}

fn table(cli: &Cli, spec: &Path) -> Result<Output, CliError> {
    let alg = load(cli, spec)?;
    let cl = CliffordAlgebra::new(alg.ctx.clone());
    let mut text = String::new();
    let mut entries = Vec::new();
    for a in 0..cl.size() {
        for b in 0..cl.size() {
            let (x, y) = (
                Multivector::blade(Blade(a as u32)),
                Multivector::blade(Blade(b as u32)),
            );
            let p = cl.mul(&x, &y);
            let _ = writeln!(text, "{x} * {y} = {p}");
            entries.push(json!({
                "left": x.to_string(),
                "right": y.to_string(),
                "product": p.to_string(),
            }));
        }
    }
    ok(
        text.trim_end().to_string(),
        json!({ "dim": cl.dim(), "entries": entries }),
    )
}

fn wick_check(cli: &Cli, spec: &Path) -> Result<Output, CliError> {
    let alg = load(cli, spec)?;
    let ctx = &alg.ctx;
    let f = bivector_from_antisym(ctx)?;
    let size = 1usize << ctx.dim();
    let mut identity_checks = 0usize;
    let mut first_identity_failure = Value::Null;
    for i in 1..=ctx.dim() {
        let x = Multivector::basis(i);
        for bits in 0..size {
            let u = Multivector::blade(Blade(bits as u32));
            let res = verify_wick_identities(ctx, &f, &x, &u)?;
            identity_checks += 1;
            if !res.all_zero() && first_identity_failure.is_null() {
                first_identity_failure = json!({ "x": x.to_string(), "u": u.to_string() });
            }
        }
    }
    let wick = WickData::new(ctx)?;
    let transport = WickTransport::new(ctx);
    let mut route_checks = 0usize;
    let mut first_route_failure = Value::Null;
    for bits in 0..size {
        let u = Multivector::blade(Blade(bits as u32));
        for r in 0..=ctx.dim() {
            let dotted = wick.dotted.project(&u, r);
            route_checks += 1;
            if (wick.project_via_exp(&u, r) != dotted || transport.project(&u, r) != dotted)
                && first_route_failure.is_null()
            {
                first_route_failure = json!({ "u": u.to_string(), "grade": r });
            }
        }
    }
    let identities_hold = first_identity_failure.is_null();
    let routes_agree = first_route_failure.is_null();
    let text = format!(
        "F = {f}\nidentities (i)-(iii): {identity_checks} checks, {}\ngrade projectors: {route_checks} checks, {}",
        if identities_hold { "all residuals zero" } else { "FAILED" },
        if routes_agree { "three routes agree" } else { "routes DISAGREE" }
    );
    Ok(Output {
        text,
        json: json!({
            "F": f.to_string(),
            "identity_checks": identity_checks,
            "identities_hold": identities_hold,
            "first_identity_failure": first_identity_failure,
            "route_checks": route_checks,
            "routes_agree": routes_agree,
            "first_route_failure": first_route_failure,
        }),
        failed: !(identities_hold && routes_agree),
    })
}

fn verdict_name(v: &Verdict) -> &'static str {
    match v {
        Verdict::Decomposable => "decomposable",
        Verdict::Deformed => "deformed",
    }
}

fn periodicity(alg: &Algebra) -> Result<Output, CliError> {
    let d = decompose(&alg.ctx)?;
    let relations_pass = d.periodicity.as_ref().map(|p| p.pass);
    let mut text = format!(
        "verdict: {}\nF = {}\nconnecting: {}\nwitness pairs: {:?}",
        verdict_name(&d.verdict),
        d.f,
        d.connecting,
        d.witness_pairs
    );
    if let Some(p) = &d.periodicity {
        let _ = write!(
            text,
            "\nperiodicity map: omega = {}, relations {}",
            p.omega,
            if p.pass { "pass" } else { "FAIL" }
        );
    }
    Ok(Output {
        text,
        json: json!({
            "verdict": verdict_name(&d.verdict),
            "connecting": d.connecting.to_string(),
            "witness_pairs": d.witness_pairs,
            "relations_pass": relations_pass,
        }),
        failed: relations_pass == Some(false),
    })
}

fn corner_class(class: &CornerClass) -> (String, Value) {
    match class {
        CornerClass::Quaternion(q) => (
            format!(
                "quaternion algebra ({}, {}) over Q: split over Q = {}, split over R = {}",
                q.alpha,
                q.beta,
                q.split_over_q
                    .map_or("undetermined".to_string(), |b| b.to_string()),
                q.split_over_r
            ),
            json!({
                "kind": "quaternion",
                "i": q.i.to_string(),
                "j": q.j.to_string(),
                "alpha": q.alpha.to_string(),
                "beta": q.beta.to_string(),
                "split_over_q": q.split_over_q,
                "split_over_r": q.split_over_r,
            }),
        ),
        CornerClass::HasNilpotent(x) => (
            format!("contains the nilpotent {x}"),
            json!({ "kind": "nilpotent", "element": x.to_string() }),
        ),
        CornerClass::Commutative => ("commutative".into(), json!({ "kind": "commutative" })),
        CornerClass::Undetermined(why) => (
            format!("undetermined: {why}"),
            json!({ "kind": "undetermined", "reason": why }),
        ),
    }
}

fn status_name(s: &AttemptStatus) -> String {
    match s {
        AttemptStatus::ZeroCandidate => "zero-candidate".into(),
        AttemptStatus::SingleEigenvalue => "single-eigenvalue".into(),
        AttemptStatus::NoRealEigenvalue => "no-real-eigenvalue".into(),
        AttemptStatus::ResidualTooLarge(r) => format!("residual {r:.3e}"),
        AttemptStatus::RationalizationFailed => "rationalization-failed".into(),
        AttemptStatus::ExactCheckFailed => "exact-check-failed".into(),
        AttemptStatus::Certified => "certified".into(),
    }
}

fn outcome_name(o: &SplitOutcome) -> &'static str {
    match o {
        SplitOutcome::Primitive => "primitive",
        SplitOutcome::Split(_) => "split",
        SplitOutcome::NoSplitFound => "no-split-found",
    }
}

fn split_output(report: &SplitReport) -> Result<Output, CliError> {
    let mut text = format!(
        "corner dimension {}\noutcome: {}",
        report.corner_dimension,
        outcome_name(&report.outcome)
    );
    let attempts: Vec<Value> = report
        .attempts
        .iter()
        .map(|a| {
            json!({
                "seed": a.seed,
                "candidate": a.candidate.to_string(),
                "status": status_name(&a.status),
            })
        })
        .collect();
    let mut out = json!({
        "idempotent": report.idempotent.to_string(),
        "corner_dimension": report.corner_dimension,
        "outcome": outcome_name(&report.outcome),
        "attempts": attempts,
    });
    if let SplitOutcome::Split(cert) = &report.outcome {
        let _ = write!(
            text,
            "\nseed {}\nf1 = {}\nf2 = {}",
            cert.seed, cert.f1, cert.f2
        );
        for (name, holds) in &cert.checks {
            let _ = write!(text, "\n  {name}: {holds}");
        }
        out["f1"] = json!(cert.f1.to_string());
        out["f2"] = json!(cert.f2.to_string());
        out["seed"] = json!(cert.seed);
        out["candidate"] = json!(cert.candidate.to_string());
        out["checks"] = cert
            .checks
            .iter()
            .map(|(name, holds)| json!({ "identity": name, "holds": holds }))
            .collect();
    } else if let SplitOutcome::NoSplitFound = report.outcome {
        let _ = write!(text, " after {} attempts", report.attempts.len());
    }
    ok(text, out)
}

fn u2(cli: &Cli, spec: &Path) -> Result<Output, CliError> {
    let alg = load(cli, spec)?;
    let car = alg
        .car
        .as_ref()
        .ok_or_else(|| CliError::Input("the u2 command needs a car block".into()))?;
    match solve_u2_generators(car)? {
        U2Outcome::Unsolvable(reason) => Ok(Output {
            text: format!("unsolvable: {reason}"),
            json: json!({ "solved": false, "reason": reason }),
            failed: false,
        }),
        U2Outcome::Solved(sol) => {
            let vac_n = vacuum_functional(car, &sol.n_op)?;
            let mut text = format!(
                "N = {}\nS1 = {}\nS2 = {}\nS3 = {}\nsolution-space dimensions: {:?}\n<N>_0 = {}",
                sol.n_op, sol.s[0], sol.s[1], sol.s[2], sol.freedom, vac_n
            );
            for (name, holds) in &sol.relations {
                let _ = write!(text, "\n  {name}: {holds}");
            }
            Ok(Output {
                text,
                json: json!({
                    "solved": true,
                    "N": sol.n_op.to_string(),
                    "S": texts(&sol.s),
                    "freedom": sol.freedom,
                    "vacuum_N": vac_n.to_text(),
                    "relations": sol.relations.iter()
                        .map(|(name, holds)| json!({ "relation": name, "holds": holds }))
                        .collect::<Vec<_>>(),
                    "all_hold": sol.all_hold(),
                }),
                failed: !sol.all_hold(),
            })
        }
    }
}

fn parse_value(s: &str) -> Result<Scalar, CliError> {
    s.parse::<Scalar>().map_err(CliError::from)
}

#[allow(clippy::too_many_arguments)]
fn sweep(
    cli: &Cli,
    spec_path: &Path,
    param: &str,
    from: &str,
    to: &str,
    step: &str,
    element: Option<&str>,
    run_split: bool,
) -> Result<Output, CliError> {
    let spec = AlgebraSpecFile::read(spec_path)?;
    let (from, to, step) = (parse_value(from)?, parse_value(to)?, parse_value(step)?);
    if !step.is_real() || !from.is_real() || !to.is_real() || step.is_negative_real() || step == Scalar::from_int(0) {
        return Err(CliError::Input("sweep needs real bounds and a positive step".into()));
    }
    let mut rows = Vec::new();
    let mut text = String::new();
    let mut value = from;
    while value.re() <= to.re() {
        let alg = spec.with_param(param, &value).load(cli.max_dim)?;
        let mut row = json!({ "value": value.to_text() });
        let mut line = format!("{param} = {}", value.to_text());
        match decompose(&alg.ctx) {
            Ok(d) => {
                row["verdict"] = json!(verdict_name(&d.verdict));
                let _ = write!(line, "  verdict {}", verdict_name(&d.verdict));
            }
            Err(e) => {
                row["verdict"] = json!(format!("error: {e}"));
                let _ = write!(line, "  verdict error ({e})");
            }
        }
        if let Some(name) = element {
            let cl = CliffordAlgebra::new(alg.ctx.clone());
            let f = alg.element(name)?;
            match left_ideal(&cl, &f) {
                Ok(ideal) => {
                    let corner = peirce_corner(&cl, &f)?;
                    row["ideal_dimension"] = json!(ideal.dimension);
                    row["corner_dimension"] = json!(corner.dimension);
                    let _ = write!(
                        line,
                        "  ideal {}  corner {}",
                        ideal.dimension, corner.dimension
                    );
                    if run_split {
                        let report = corner_split_search(&cl, &f, &split_config(cli))?;
                        row["split"] = json!(outcome_name(&report.outcome));
                        let _ = write!(line, "  split {}", outcome_name(&report.outcome));
                    }
                }
                Err(e) => {
                    row["ideal_dimension"] = json!(format!("error: {e}"));
                    let _ = write!(line, "  ideal error ({e})");
                }
            }
        }
        rows.push(row);
        let _ = writeln!(text, "{line}");
        value = &value + &step;
    }
    ok(
        text.trim_end().to_string(),
        json!({ "param": param, "rows": rows }),
    )
}
