use nalgebra::{Complex, DMatrix, Schur};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::clifford::CliffordAlgebra;
use crate::error::{Error, Result};
use crate::exterior::Multivector;
use crate::reps::ideal::{is_idempotent, peirce_corner, CornerBasis};
use crate::scalar::Scalar;

type CMatrix = DMatrix<Complex<f64>>;

/// Eigenvalues closer than this are treated as one cluster.
const CLUSTER_TOL: f64 = 1e-6;

/// Settings of the floating-point stage. Certificates are always checked exactly.
#[derive(Clone, Debug)]
pub struct SplitConfig {
    pub seeds: usize,
    pub base_seed: u64,
    pub tolerance: f64,
    pub max_den: u64,
}

impl Default for SplitConfig {
    fn default() -> Self {
        SplitConfig {
            seeds: 32,
            base_seed: 0,
            tolerance: 1e-9,
            max_den: 1_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum AttemptStatus {
    ZeroCandidate,
    /// The candidate is a multiple of `f` on the corner.
    SingleEigenvalue,
    NoRealEigenvalue,
    ResidualTooLarge(f64),
    RationalizationFailed,
    ExactCheckFailed,
    Certified,
}

#[derive(Clone, Debug)]
pub struct Attempt {
    pub seed: usize,
    pub candidate: Multivector,
    pub status: AttemptStatus,
}

/// An exactly verified orthogonal splitting `f = f1 + f2`.
#[derive(Clone, Debug)]
pub struct SplitCertificate {
    pub seed: usize,
    pub candidate: Multivector,
    pub eigenvalue: f64,
    pub f1: Multivector,
    pub f2: Multivector,
    pub checks: Vec<(String, bool)>,
}

impl SplitCertificate {
    pub fn verified(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

#[derive(Clone, Debug)]
pub enum SplitOutcome {
    Primitive,
    Split(SplitCertificate),
    NoSplitFound,
}

#[derive(Clone, Debug)]
pub struct SplitReport {
    pub idempotent: Multivector,
    pub corner_dimension: usize,
    pub outcome: SplitOutcome,
    pub attempts: Vec<Attempt>,
}

/// Exact identities certifying that `f1`, `f - f1` split `f`.
pub fn certify_split(cl: &CliffordAlgebra, f: &Multivector, f1: &Multivector) -> Vec<(String, bool)> {
    let f2 = f - f1;
    vec![
        ("f1*f1 = f1".to_string(), cl.mul(f1, f1) == *f1),
        ("f*f1 = f1".to_string(), cl.mul(f, f1) == *f1),
        ("f1*f = f1".to_string(), cl.mul(f1, f) == *f1),
        ("f1 != 0".to_string(), !f1.is_zero()),
        ("f2 != 0".to_string(), !f2.is_zero()),
        ("f2*f2 = f2".to_string(), cl.mul(&f2, &f2) == f2),
        ("f1*f2 = 0".to_string(), cl.mul(f1, &f2).is_zero()),
        ("f2*f1 = 0".to_string(), cl.mul(&f2, f1).is_zero()),
    ]
}

/// Search for a nontrivial idempotent in the Peirce corner `f·Cl·f`.
///
/// Seed `k` uses the `k`-th corner basis element as candidate while those
/// last, then pseudo-random integer combinations of the corner basis. The
/// lowest certified seed wins, so the result does not depend on scheduling.
pub fn corner_split_search(
    cl: &CliffordAlgebra,
    f: &Multivector,
    config: &SplitConfig,
) -> Result<SplitReport> {
    let corner = peirce_corner(cl, f)?;
    if corner.is_primitive() {
        return Ok(SplitReport {
            idempotent: f.clone(),
            corner_dimension: 1,
            outcome: SplitOutcome::Primitive,
            attempts: Vec::new(),
        });
    }
    let results: Vec<(Attempt, Option<SplitCertificate>)> = (0..config.seeds)
        .into_par_iter()
        .map(|seed| {
            let candidate = candidate_element(&corner, seed, config.base_seed);
            run_attempt(cl, f, seed, candidate, config)
        })
        .collect();
    let mut attempts = Vec::with_capacity(results.len());
    let mut winner = None;
    for (attempt, cert) in results {
        attempts.push(attempt);
        if winner.is_none() {
            winner = cert;
        }
        if winner.is_some() {
            break;
        }
    }
    let outcome = match winner {
        Some(cert) => SplitOutcome::Split(cert),
        None => SplitOutcome::NoSplitFound,
    };
    Ok(SplitReport {
        idempotent: f.clone(),
        corner_dimension: corner.dimension,
        outcome,
        attempts,
    })
}

fn candidate_element(corner: &CornerBasis, seed: usize, base_seed: u64) -> Multivector {
    if seed < corner.dimension {
        return corner.basis[seed].clone();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(base_seed.wrapping_add(seed as u64));
    let mut c = Multivector::zero();
    for b in &corner.basis {
        let k: i64 = rng.gen_range(-3..=3);
        c.add_scaled(b, &Scalar::from_int(k));
    }
    c
}

fn run_attempt(
    cl: &CliffordAlgebra,
    f: &Multivector,
    seed: usize,
    candidate: Multivector,
    config: &SplitConfig,
) -> (Attempt, Option<SplitCertificate>) {
    let finish = |status: AttemptStatus, candidate: Multivector| Attempt {
        seed,
        candidate,
        status,
    };
    if candidate.is_zero() {
        return (finish(AttemptStatus::ZeroCandidate, candidate), None);
    }
    let r = to_complex_matrix(&cl.regular_representation(&candidate));
    let clusters = match eigen_clusters(&r) {
        Some(c) => c,
        None => return (finish(AttemptStatus::NoRealEigenvalue, candidate), None),
    };
    let mut real: Vec<Complex<f64>> = clusters
        .iter()
        .copied()
        .filter(|l| l.im.abs() < CLUSTER_TOL && l.norm() > CLUSTER_TOL)
        .collect();
    if clusters.len() < 2 {
        return (finish(AttemptStatus::SingleEigenvalue, candidate), None);
    }
    if real.is_empty() {
        return (finish(AttemptStatus::NoRealEigenvalue, candidate), None);
    }
    real.sort_by(|a, b| b.re.total_cmp(&a.re));

    let mut last = AttemptStatus::NoRealEigenvalue;
    for lambda in real {
        let p = lagrange_projection(&r, &clusters, lambda);
        let residual = (&p * &p - &p).camax();
        if residual > config.tolerance {
            last = AttemptStatus::ResidualTooLarge(residual);
            continue;
        }
        let Some(f1) = rationalize_column(&p, config.max_den) else {
            last = AttemptStatus::RationalizationFailed;
            continue;
        };
        if f1 == *f {
            last = AttemptStatus::SingleEigenvalue;
            continue;
        }
        let checks = certify_split(cl, f, &f1);
        if checks.iter().all(|(_, ok)| *ok) {
            let cert = SplitCertificate {
                seed,
                candidate: candidate.clone(),
                eigenvalue: lambda.re,
                f2: f - &f1,
                f1,
                checks,
            };
            return (finish(AttemptStatus::Certified, candidate), Some(cert));
        }
        last = AttemptStatus::ExactCheckFailed;
    }
    (finish(last, candidate), None)
}

fn to_complex_matrix(m: &[Vec<Scalar>]) -> CMatrix {
    let n = m.len();
    CMatrix::from_fn(n, n, |i, j| {
        let (re, im) = m[i][j].to_c64();
        Complex::new(re, im)
    })
}

/// Distinct eigenvalues up to `CLUSTER_TOL`.
fn eigen_clusters(r: &CMatrix) -> Option<Vec<Complex<f64>>> {
    let schur = Schur::try_new(r.clone(), 1e-14, 10_000)?;
    let eigen = schur.eigenvalues()?;
    let mut clusters: Vec<(Complex<f64>, usize)> = Vec::new();
    for l in eigen.iter() {
        match clusters
            .iter_mut()
            .find(|(c, k)| (c / Complex::new(*k as f64, 0.0) - l).norm() < CLUSTER_TOL)
        {
            Some((c, k)) => {
                *c += l;
                *k += 1;
            }
            None => clusters.push((*l, 1)),
        }
    }
    Some(
        clusters
            .into_iter()
            .map(|(c, k)| c / Complex::new(k as f64, 0.0))
            .collect(),
    )
}

/// `Π_{μ ≠ λ} (R − μ)/(λ − μ)`, the spectral projection when `R` is diagonalizable.
fn lagrange_projection(r: &CMatrix, clusters: &[Complex<f64>], lambda: Complex<f64>) -> CMatrix {
    let n = r.nrows();
    let id = CMatrix::identity(n, n);
    let mut p = id.clone();
    for mu in clusters {
        if (mu - lambda).norm() < CLUSTER_TOL {
            continue;
        }
        let factor = (r - &id * *mu) / (lambda - mu);
        p *= factor;
    }
    p
}

/// Left multiplication by `p` sends the unit blade to `p` itself.
fn rationalize_column(p: &CMatrix, max_den: u64) -> Option<Multivector> {
    let mut coeffs = Vec::with_capacity(p.nrows());
    for i in 0..p.nrows() {
        let z = p[(i, 0)];
        let re = Scalar::approximate(z.re, max_den)?;
        let im = Scalar::approximate(z.im, max_den)?;
        coeffs.push(re + im * Scalar::i());
    }
    Some(Multivector::from_dense(&coeffs))
}

/// Orthogonal primitive idempotents summing to `f`, plus any pieces the search could not split.
#[derive(Clone, Debug)]
pub struct PrimitiveDecomposition {
    pub primitives: Vec<Multivector>,
    pub unresolved: Vec<SplitReport>,
}

pub fn primitive_decomposition(
    cl: &CliffordAlgebra,
    f: &Multivector,
    config: &SplitConfig,
) -> Result<PrimitiveDecomposition> {
    if !is_idempotent(cl, f) {
        return Err(Error::NotIdempotent);
    }
    let mut stack = vec![f.clone()];
    let mut primitives = Vec::new();
    let mut unresolved = Vec::new();
    while let Some(e) = stack.pop() {
        let report = corner_split_search(cl, &e, config)?;
        match report.outcome {
            SplitOutcome::Primitive => primitives.push(e),
            SplitOutcome::Split(ref cert) => {
                stack.push(cert.f2.clone());
                stack.push(cert.f1.clone());
            }
            SplitOutcome::NoSplitFound => unresolved.push(report),
        }
    }
    Ok(PrimitiveDecomposition {
        primitives,
        unresolved,
    })
}
