//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::time::Instant;

use qcliff::decomp::{coupled_block_form, decompose, Verdict};
use qcliff::linalg::{self, Matrix};
use qcliff::reps::car::car_identities;
use qcliff::reps::{
    block_form_probe, build_car, corner_split_search, is_idempotent, left_ideal,
    parametric_idempotent, primitive_decomposition, solve_u2_generators, CornerClass,
    SplitConfig, SplitOutcome, U2Outcome,
};
use qcliff::wick::{
    dotted_wedge, grading_witness, verify_wick_identities, DottedBasis, GradingComparison,
    WickData, WickTransport,
};
use qcliff::{split_form, Blade, CliffordAlgebra, FormContext, Multivector, Ring, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn small_rational(rng: &mut ChaCha8Rng) -> Scalar {
    Scalar::frac(rng.gen_range(-5..=5), rng.gen_range(1..=4))
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    (0..n)
        .map(|_| (0..n).map(|_| small_rational(rng)).collect())
        .collect()
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<Scalar> {
    (0..n).map(|_| small_rational(rng)).collect()
}

fn random_multivector(rng: &mut ChaCha8Rng, n: usize, terms: usize) -> Multivector {
    let mut u = Multivector::zero();
    for _ in 0..terms {
        let bits = rng.gen_range(0..(1u32 << n));
        u.add_term(Blade(bits), small_rational(rng));
    }
    u
}

fn random_bivector(rng: &mut ChaCha8Rng, n: usize) -> Multivector {
    let mut f = Multivector::zero();
    for i in 1..=n {
        for j in i + 1..=n {
            let b = Blade(Blade::basis(i).0 | Blade::basis(j).0);
            f.add_term(b, small_rational(rng));
        }
    }
    f
}

/// `Σ x_i B_ij y_j` straight from the matrix.
fn bilinear(b: &Matrix, x: &[Scalar], y: &[Scalar]) -> Scalar {
    let mut s = Scalar::from_int(0);
    for (i, xi) in x.iter().enumerate() {
        for (j, yj) in y.iter().enumerate() {
            s += &(&(xi * &b[i][j]) * yj);
        }
    }
    s
}

fn nondegenerate_form(rng: &mut ChaCha8Rng, n: usize) -> (Matrix, FormContext) {
    loop {
        let b = random_matrix(rng, n);
        let ctx = split_form(b.clone(), Ring::Rational).unwrap();
        if qcliff::forms::signature(&ctx).is_nondegenerate() {
            return (b, ctx);
        }
    }
}

fn q(s: &str) -> Scalar {
    s.parse().unwrap()
}

fn mv(s: &str) -> Multivector {
    s.parse().unwrap()
}

fn square_law(rng: &mut ChaCha8Rng) -> Check {
    let mut identities = 0;
    for round in 0..200 {
        let n = 1 + round % 6;
        let b = random_matrix(rng, n);
        let ctx = split_form(b.clone(), Ring::Rational).map_err(|e| e.to_string())?;
        let cl = CliffordAlgebra::new(ctx);
        let (xs, ys) = (random_vector(rng, n), random_vector(rng, n));
        let (x, y) = (Multivector::vector(&xs), Multivector::vector(&ys));
        let qx = bilinear(&b, &xs, &xs);
        if cl.mul(&x, &x) != Multivector::scalar(qx) {
            return Err(format!("x*x != Q(x) for B = {b:?}, x = {x}"));
        }
        let two_g = &bilinear(&b, &xs, &ys) + &bilinear(&b, &ys, &xs);
        if &cl.mul(&x, &y) + &cl.mul(&y, &x) != Multivector::scalar(two_g) {
            return Err(format!("xy + yx != 2g(x,y) for B = {b:?}"));
        }
        identities += 2;
    }
    Ok(format!("200 random forms, {identities} identities exact"))
}

fn wick_identities(rng: &mut ChaCha8Rng) -> Check {
    for _ in 0..50 {
        let (_, ctx) = nondegenerate_form(rng, 6);
        let f = random_bivector(rng, 6);
        let x = Multivector::vector(&random_vector(rng, 6));
        let u = random_multivector(rng, 6, 5);
        let r = verify_wick_identities(&ctx, &f, &x, &u).map_err(|e| e.to_string())?;
        if !r.all_zero() {
            return Err(format!("nonzero residuals for F = {f}, x = {x}, u = {u}: {r:?}"));
        }
    }
    Ok("50 random (F, x, u) at dim 6, residuals identically zero".into())
}

fn grading_non_isomorphism(rng: &mut ChaCha8Rng) -> Check {
    for _ in 0..100 {
        let g_raw = random_matrix(rng, 4);
        let g: Matrix = (0..4)
            .map(|i| (0..4).map(|j| &g_raw[i][j] + &g_raw[j][i]).collect())
            .collect();
        let antisym = |rng: &mut ChaCha8Rng| -> Matrix {
            let mut a = linalg::zeros(4, 4);
            for i in 0..4 {
                for j in i + 1..4 {
                    let v = small_rational(rng);
                    a[j][i] = -&v;
                    a[i][j] = v;
                }
            }
            a
        };
        let (a1, mut a2) = (antisym(rng), antisym(rng));
        if a1 == a2 {
            a2[0][1] = &a2[0][1] + &Scalar::from_int(1);
            a2[1][0] = -&a2[0][1];
        }
        let c1 = FormContext::from_parts(&g, &a1, Ring::Rational).map_err(|e| e.to_string())?;
        let c2 = FormContext::from_parts(&g, &a2, Ring::Rational).map_err(|e| e.to_string())?;
        match grading_witness(&c1, &c2).map_err(|e| e.to_string())? {
            GradingComparison::Equal => return Err("A1 != A2 reported equal".into()),
            GradingComparison::Witness { element, grade, .. } => {
                let p1 = DottedBasis::new(&c1).project(&element, grade);
                let p2 = DottedBasis::new(&c2).project(&element, grade);
                if p1 == p2 {
                    return Err(format!("witness {element} does not separate the gradings"));
                }
            }
        }
        if grading_witness(&c1, &c1.clone()).map_err(|e| e.to_string())? != GradingComparison::Equal {
            return Err("A1 = A2 not reported equal".into());
        }
    }
    Ok("100 pairs at dim 4 separated by a witness; equal pairs reported equal".into())
}

fn dotted_wedge_law(rng: &mut ChaCha8Rng) -> Check {
    let mut forms: Vec<Matrix> = (0..20).map(|k| random_matrix(rng, 2 + k % 4)).collect();
    forms.push(vec![vec![q("1"), q("1")], vec![q("0"), q("-1")]]);
    let mut pairs = 0;
    for b in &forms {
        let n = b.len();
        let ctx = split_form(b.clone(), Ring::Rational).map_err(|e| e.to_string())?;
        for i in 1..=n {
            for j in 1..=n {
                let (x, y) = (Multivector::basis(i), Multivector::basis(j));
                let lhs = &dotted_wedge(&ctx, &x, &y).map_err(|e| e.to_string())? - &x.wedge(&y);
                let a_ij = &(&b[i - 1][j - 1] - &b[j - 1][i - 1]) * &Scalar::frac(1, 2);
                if lhs != Multivector::scalar(a_ij) {
                    return Err(format!("pair ({i},{j}) of {b:?}: got {lhs}"));
                }
                pairs += 1;
            }
        }
    }
    Ok(format!("{} forms, {pairs} generator pairs exact", forms.len()))
}

fn periodicity_symmetric() -> Check {
    let mut cases = Vec::new();
    for p in 1..=5 {
        for q in 1..=(6 - p) {
            let ctx = FormContext::diagonal_pq(p, q).map_err(|e| e.to_string())?;
            let d = decompose(&ctx).map_err(|e| e.to_string())?;
            if d.verdict != Verdict::Decomposable {
                return Err(format!("Cl_{{{p},{q}}} not decomposable"));
            }
            let report = d.periodicity.ok_or("no periodicity report")?;
            if !report.pass {
                return Err(format!("Cl_{{{p},{q}}} relation checks fail: {report:?}"));
            }
            cases.push(format!("({p},{q})"));
        }
    }
    Ok(format!("{} signatures: {}", cases.len(), cases.join(" ")))
}

fn deformation_detection() -> Check {
    let mut checked = 0;
    for a in ["0", "1", "-2/3"] {
        for pattern in 0..16u32 {
            for magnitude in ["1", "-3/7"] {
                let entry = |k: u32| if pattern >> k & 1 == 1 { q(magnitude) } else { q("0") };
                let n = [[entry(0), entry(1)], [entry(2), entry(3)]];
                let ctx = coupled_block_form(&q(a), n).map_err(|e| e.to_string())?;
                let d = decompose(&ctx).map_err(|e| e.to_string())?;
                let expected = if pattern == 0 { Verdict::Decomposable } else { Verdict::Deformed };
                if d.verdict != expected {
                    return Err(format!("a = {a}, pattern {pattern:04b}: {:?}", d.verdict));
                }
                if (pattern != 0) == d.connecting.is_zero() {
                    return Err(format!("a = {a}, pattern {pattern:04b}: connecting {}", d.connecting));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} block forms, Deformed exactly when some n_ij != 0"))
}

fn reference_idempotents() -> Check {
    let cl = CliffordAlgebra::new(FormContext::diagonal_pq(1, 1).unwrap());
    for f in ["1/2 + 1/2*e1", "1/2 + 1/2*e1^e2"] {
        let f = mv(f);
        let dim = left_ideal(&cl, &f).map_err(|e| e.to_string())?.dimension;
        if dim != 2 {
            return Err(format!("ideal of {f} has dimension {dim}"));
        }
    }
    let f = parametric_idempotent(&q("0"), &q("3/5")).map_err(|e| e.to_string())?;
    let block = CliffordAlgebra::new(
        coupled_block_form(&q("0"), [[q("0"), q("0")], [q("0"), q("0")]]).unwrap(),
    );
    if !is_idempotent(&cl, &f) || !is_idempotent(&block, &f) {
        return Err(format!("{f} is not idempotent"));
    }
    Ok(format!("f-_11, f+_11 give 2-dimensional ideals; f = {f} satisfies f*f = f"))
}

fn undeformed_ideals() -> Check {
    let ctx = coupled_block_form(&q("0"), [[q("0"), q("0")], [q("0"), q("0")]]).unwrap();
    let cl = CliffordAlgebra::new(ctx);
    let regular = cl.regular_representation(&Multivector::one());
    if regular.len() != 16 || linalg::rank(&regular) != 16 {
        return Err("regular representation is not 16-dimensional".into());
    }
    let dec = primitive_decomposition(&cl, &Multivector::one(), &SplitConfig::default())
        .map_err(|e| e.to_string())?;
    if !dec.unresolved.is_empty() {
        return Err(format!("{} pieces left unsplit", dec.unresolved.len()));
    }
    let dims: Vec<usize> = dec
        .primitives
        .iter()
        .map(|p| left_ideal(&cl, p).map(|i| i.dimension))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    if dims.iter().any(|&d| d != 4) || dims.iter().sum::<usize>() != 16 {
        return Err(format!("primitive ideal dimensions {dims:?}"));
    }
    let f = parametric_idempotent(&q("0"), &q("3/5")).unwrap();
    let report = corner_split_search(&cl, &f, &SplitConfig::default()).map_err(|e| e.to_string())?;
    let SplitOutcome::Split(cert) = report.outcome else {
        return Err("parametric idempotent did not split".into());
    };
    let d1 = left_ideal(&cl, &cert.f1).map_err(|e| e.to_string())?.dimension;
    let d2 = left_ideal(&cl, &cert.f2).map_err(|e| e.to_string())?.dimension;
    if (d1, d2) != (4, 4) {
        return Err(format!("parametric idempotent split into ideals {d1} + {d2}"));
    }
    Ok(format!(
        "regular rep 16; 1 = sum of {} primitives with ideals {dims:?}; parametric f (ideal 8) splits 4 + 4",
        dims.len()
    ))
}

fn deformed_probe() -> Check {
    let n = [[q("1"), q("0")], [q("0"), q("0")]];
    let report = block_form_probe(&q("0"), n, &q("3/5"), &SplitConfig::default())
        .map_err(|e| e.to_string())?;
    for line in &report.transcript {
        println!("      | {line}");
    }
    let class = match &report.corner_class {
        CornerClass::Quaternion(h) => format!(
            "corner ({}, {})_Q split over Q: {:?}",
            h.alpha, h.beta, h.split_over_q
        ),
        other => format!("corner {other:?}"),
    };
    Ok(format!(
        "pipeline complete: ideal {} (reference {}, {}), corner {}, split search {}, {class}",
        report.ideal_dimension,
        report.reference_dimension,
        if report.matches_reference() { "agrees" } else { "DIFFERS" },
        report.corner_dimension,
        match report.split {
            SplitOutcome::Primitive => "primitive",
            SplitOutcome::Split(_) => "split",
            SplitOutcome::NoSplitFound => "no-split-found",
        }
    ))
}

fn car_and_u2() -> Check {
    let car = build_car(2, &linalg::zeros(4, 4)).map_err(|e| e.to_string())?;
    let identities = car_identities(&car);
    if let Some((name, _)) = identities.iter().find(|(_, ok)| !ok) {
        return Err(format!("CAR identity fails: {name}"));
    }
    let U2Outcome::Solved(sol) = solve_u2_generators(&car).map_err(|e| e.to_string())? else {
        return Err("U(2) system unsolvable".into());
    };
    if let Some((name, _)) = sol.relations.iter().find(|(_, ok)| !ok) {
        return Err(format!("U(2) relation fails: {name}"));
    }
    let fock = car.fock_ideal().map_err(|e| e.to_string())?.dimension;
    if fock != 4 {
        return Err(format!("Fock ideal dimension {fock}"));
    }
    Ok(format!(
        "{} CAR identities, {} U(2) relations exact, N = {}, Fock ideal 4",
        identities.len(),
        sol.relations.len(),
        sol.n_op
    ))
}

fn gamma_five() -> Check {
    let cl = CliffordAlgebra::new(FormContext::diagonal_pq(1, 3).unwrap());
    let omega = cl.mul_all(&cl.generators());
    let eta = [1, -1, -1, -1];
    for i in 0..4 {
        for j in 0..4 {
            let ai = cl.mul(&Multivector::basis(i + 1), &omega);
            let aj = cl.mul(&Multivector::basis(j + 1), &omega);
            let expected = if i == j { Scalar::from_int(2 * eta[i]) } else { Scalar::from_int(0) };
            if cl.anticommutator(&ai, &aj) != Multivector::scalar(expected) {
                return Err(format!("alpha_{} alpha_{} fails", i + 1, j + 1));
            }
        }
    }
    Ok("alpha_i = e_i*omega satisfy alpha_i alpha_j + alpha_j alpha_i = 2 eta_ij".into())
}

fn cross_implementation(rng: &mut ChaCha8Rng) -> Check {
    let mut checks = 0;
    for k in 0..20 {
        let n = 2 + k % 4;
        let (_, ctx) = nondegenerate_form(rng, n);
        let wick = WickData::new(&ctx).map_err(|e| e.to_string())?;
        let transport = WickTransport::new(&ctx);
        for bits in 0..(1u32 << n) {
            let u = Multivector::blade(Blade(bits));
            for r in 0..=n {
                let dotted = wick.dotted.project(&u, r);
                if wick.project_via_exp(&u, r) != dotted || transport.project(&u, r) != dotted {
                    return Err(format!("blade {u}, grade {r}, dim {n}"));
                }
                checks += 1;
            }
        }
    }
    Ok(format!("20 forms at dim <= 5, {checks} blade projections agree"))
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(20261018);
    let start = Instant::now();
    let criteria: Vec<(&str, Box<dyn FnOnce(&mut ChaCha8Rng) -> Check>)> = vec![
        ("square law & anticommutation", Box::new(square_law)),
        ("Wick identities", Box::new(wick_identities)),
        ("grading non-isomorphism", Box::new(grading_non_isomorphism)),
        ("dotted-wedge law", Box::new(dotted_wedge_law)),
        ("periodicity, symmetric case", Box::new(|_| periodicity_symmetric())),
        ("deformation detection", Box::new(|_| deformation_detection())),
        ("reference idempotents", Box::new(|_| reference_idempotents())),
        ("ideal dimensions, undeformed Cl_{2,2}", Box::new(|_| undeformed_ideals())),
        ("deformed Cl_{2,2} probe", Box::new(|_| deformed_probe())),
        ("CAR and U(2)", Box::new(|_| car_and_u2())),
        ("gamma_5 regrading", Box::new(|_| gamma_five())),
        ("cross-implementation coherence", Box::new(cross_implementation)),
    ];
    let mut failures = 0;
    for (k, (name, check)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        match check(&mut rng) {
            Ok(detail) => println!(
                "PASS  {:>2}. {name}: {detail} ({:.2}s)",
                k + 1,
                t.elapsed().as_secs_f64()
            ),
            Err(detail) => {
                failures += 1;
                println!("FAIL  {:>2}. {name}: {detail}", k + 1);
            }
        }
    }
    println!(
        "acceptance: {} of 12 criteria passed in {:.1}s",
        12 - failures,
        start.elapsed().as_secs_f64()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
