//! The idempotent pipeline on the coupled 4×4 block form: idempotent check,
//! ideal rank, corner dimension, split search, and corner classification.

use crate::clifford::CliffordAlgebra;
use crate::decomp::{coupled_block_form, rational_sqrt};
use crate::error::{Error, Result};
use crate::exterior::Multivector;
use crate::reps::ideal::{is_idempotent, left_ideal, peirce_corner};
use crate::reps::quaternion::{classify_corner, CornerClass};
use crate::reps::split::{corner_split_search, SplitConfig, SplitOutcome};
use crate::scalar::Scalar;

/// Ideal dimension reported in the literature for the deformed block form.
pub const REFERENCE_IDEAL_DIMENSION: usize = 8;

/// `¼(2 + λa) + ¼√(4 − λ²a² − 4λ²)·e1 + ½λ·e1∧e2`, defined when the root is rational.
pub fn parametric_idempotent(a: &Scalar, lambda: &Scalar) -> Result<Multivector> {
    let quarter = Scalar::frac(1, 4);
    let l2 = lambda * lambda;
    let radicand = &(&Scalar::from_int(4) - &(&l2 * &(a * a))) - &(&Scalar::from_int(4) * &l2);
    let root = rational_sqrt(&radicand).ok_or_else(|| {
        Error::Invalid(format!("4 - l^2 a^2 - 4 l^2 = {radicand} is not a rational square"))
    })?;
    let text = format!(
        "{} + {}*e1 + {}*e1^e2",
        (&quarter * &(&Scalar::from_int(2) + &(lambda * a))).to_text(),
        (&quarter * &root).to_text(),
        (&Scalar::frac(1, 2) * lambda).to_text()
    );
    text.parse()
}

#[derive(Clone, Debug)]
pub struct ProbeReport {
    pub idempotent: Multivector,
    pub is_idempotent: bool,
    pub ideal_dimension: usize,
    pub reference_dimension: usize,
    pub corner_dimension: usize,
    pub split: SplitOutcome,
    pub corner_class: CornerClass,
    /// Ideal dimensions of the two halves when the search split `f`.
    pub split_ideal_dimensions: Option<(usize, usize)>,
    pub transcript: Vec<String>,
}

impl ProbeReport {
    pub fn matches_reference(&self) -> bool {
        self.ideal_dimension == self.reference_dimension
    }
}

pub fn block_form_probe(
    a: &Scalar,
    n: [[Scalar; 2]; 2],
    lambda: &Scalar,
    config: &SplitConfig,
) -> Result<ProbeReport> {
    let ctx = coupled_block_form(a, n.clone())?;
    let cl = CliffordAlgebra::new(ctx);
    let f = parametric_idempotent(a, lambda)?;
    let mut t = Vec::new();
    t.push(format!(
        "form: a = {a}, n = [[{}, {}], [{}, {}]], lambda = {lambda}",
        n[0][0], n[0][1], n[1][0], n[1][1]
    ));
    t.push(format!("f = {f}"));
    let idem = is_idempotent(&cl, &f);
    t.push(format!("f*f = f: {idem}"));
    if !idem {
        return Err(Error::NotIdempotent);
    }
    let ideal = left_ideal(&cl, &f)?;
    t.push(format!(
        "dim Cl*f = {} (reference {REFERENCE_IDEAL_DIMENSION}, {})",
        ideal.dimension,
        if ideal.dimension == REFERENCE_IDEAL_DIMENSION { "agrees" } else { "differs" }
    ));
    let corner = peirce_corner(&cl, &f)?;
    t.push(format!("dim f*Cl*f = {}", corner.dimension));
    let report = corner_split_search(&cl, &f, config)?;
    let mut split_dims = None;
    match &report.outcome {
        SplitOutcome::Primitive => t.push("split search: primitive".into()),
        SplitOutcome::Split(cert) => {
            let d1 = left_ideal(&cl, &cert.f1)?.dimension;
            let d2 = left_ideal(&cl, &cert.f2)?.dimension;
            split_dims = Some((d1, d2));
            t.push(format!(
                "split search: split at seed {} into f1 = {} and f2 = {} (ideal dimensions {d1} + {d2})",
                cert.seed, cert.f1, cert.f2
            ));
            for (name, ok) in &cert.checks {
                t.push(format!("  {name}: {ok}"));
            }
        }
        SplitOutcome::NoSplitFound => t.push(format!(
            "split search: no split found after {} seeds",
            report.attempts.len()
        )),
    }
    let class = classify_corner(&cl, &f)?;
    t.push(match &class {
        CornerClass::Quaternion(q) => format!(
            "corner = quaternion algebra ({}, {}) over Q: split over Q = {}, split over R = {}",
            q.alpha,
            q.beta,
            match q.split_over_q {
                Some(b) => b.to_string(),
                None => "undetermined".into(),
            },
            q.split_over_r
        ),
        CornerClass::HasNilpotent(x) => format!("corner contains the nilpotent {x}, so it is M_2(Q)"),
        CornerClass::Commutative => "corner is commutative".into(),
        CornerClass::Undetermined(why) => format!("corner class undetermined: {why}"),
    });
    Ok(ProbeReport {
        idempotent: f,
        is_idempotent: idem,
        ideal_dimension: ideal.dimension,
        reference_dimension: REFERENCE_IDEAL_DIMENSION,
        corner_dimension: corner.dimension,
        split: report.outcome,
        corner_class: class,
        split_ideal_dimensions: split_dims,
        transcript: t,
    })
}
