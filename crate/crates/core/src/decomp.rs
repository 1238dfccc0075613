//! Witt splitting, the (1,1)-periodicity map, and detection of deformed tensor
//! products through the connecting terms of the Wick bivector `F`.

use num::traits::{Signed, Zero};

use crate::clifford::{CliffordAlgebra, RelationReport};
use crate::error::{Error, Result};
use crate::exterior::{Blade, Multivector};
use crate::forms::{bivector_from_antisym, FormContext};
use crate::linalg::{self, Matrix};
use crate::scalar::{Ring, Scalar};

/// `V = N ⊥ M` with `M` a hyperbolic plane. Indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittSplit {
    pub n_indices: Vec<usize>,
    /// `[positive, negative]` direction of the hyperbolic plane.
    pub m_indices: [usize; 2],
}

impl WittSplit {
    pub fn is_cross_pair(&self, i: usize, j: usize) -> bool {
        let in_m = |k| self.m_indices.contains(&k);
        in_m(i) != in_m(j)
    }

    /// `(x ∈ N, y ∈ M)` pairs.
    pub fn cross_pairs(&self) -> Vec<(usize, usize)> {
        self.n_indices
            .iter()
            .flat_map(|&x| self.m_indices.iter().map(move |&y| (x, y)))
            .collect()
    }
}

/// Chooses the last positive and the last negative diagonal direction of `g`
/// for `M`; the remaining indices form `N`.
pub fn witt_split(ctx: &FormContext) -> Result<WittSplit> {
    let g = ctx.g();
    let n = ctx.dim();
    let pos = (1..=n).rev().find(|&i| g[i - 1][i - 1].re().is_positive());
    let neg = (1..=n).rev().find(|&i| g[i - 1][i - 1].re().is_negative());
    match (pos, neg) {
        (Some(p), Some(q)) => Ok(WittSplit {
            n_indices: (1..=n).filter(|&i| i != p && i != q).collect(),
            m_indices: [p, q],
        }),
        (None, _) => Err(Error::NoHyperbolicSplit("no positive direction".into())),
        (_, None) => Err(Error::NoHyperbolicSplit("no negative direction".into())),
    }
}

/// Exact square root of a nonnegative rational, when it exists.
pub fn rational_sqrt(s: &Scalar) -> Option<Scalar> {
    if !s.is_real() || s.re().is_negative() {
        return None;
    }
    let num = s.re().numer().sqrt();
    let den = s.re().denom().sqrt();
    if &(&num * &num) == s.re().numer() && &(&den * &den) == s.re().denom() {
        Some(Scalar::from_rational(num::rational::BigRational::new(num, den)))
    } else {
        None
    }
}

fn restrict(m: &Matrix, idx: &[usize]) -> Matrix {
    idx.iter()
        .map(|&i| idx.iter().map(|&j| m[i - 1][j - 1].clone()).collect())
        .collect()
}

/// Outcome of checking the generator assignment `x ↦ x ω_M` for `x ∈ N`,
/// `y ↦ y` for `y ∈ M`.
#[derive(Clone, Debug)]
pub struct PeriodicityReport {
    pub split: WittSplit,
    /// `ω = e_m1 e_m2 − g(e_m1, e_m2)`, anticommuting with both `M` generators.
    pub omega: Multivector,
    pub n_images: Vec<Multivector>,
    pub n_relations: RelationReport,
    pub m_relations: RelationReport,
    /// First `(x ∈ N, y ∈ M)` whose images fail to commute.
    pub first_noncommuting: Option<(usize, usize)>,
    pub pass: bool,
}

/// Verifies the ungraded decomposition `Cl(N ⊕ M) ≅ Cl(N') ⊗ Cl(M)` inside `cl`:
/// the `N` images satisfy the relations of `−det(g_M) · g_N`, the `M` generators
/// those of `g_M`, and the two families commute elementwise.
pub fn periodicity_check(cl: &CliffordAlgebra, split: &WittSplit) -> PeriodicityReport {
    let g = cl.ctx().g();
    let [m1, m2] = split.m_indices;
    let mut omega = cl
        .generator_product(&[m1, m2])
        .expect("split indices in range");
    omega.add_term(Blade::UNIT, -&g[m1 - 1][m2 - 1]);
    let g_m = restrict(g, &split.m_indices);
    let scale = -linalg::determinant(&g_m);
    let n_images: Vec<Multivector> = split
        .n_indices
        .iter()
        .map(|&i| cl.mul(&Multivector::basis(i), &omega))
        .collect();
    let target_n: Matrix = restrict(g, &split.n_indices)
        .into_iter()
        .map(|row| row.iter().map(|s| s * &scale).collect())
        .collect();
    let n_relations = cl.verify_generator_relations(&n_images, &target_n);
    let m_gens: Vec<Multivector> = split.m_indices.iter().map(|&i| Multivector::basis(i)).collect();
    let m_relations = cl.verify_generator_relations(&m_gens, &g_m);
    let mut first_noncommuting = None;
    'outer: for (k, img) in n_images.iter().enumerate() {
        for (l, y) in m_gens.iter().enumerate() {
            if !cl.commutator(img, y).is_zero() {
                first_noncommuting = Some((split.n_indices[k], split.m_indices[l]));
                break 'outer;
            }
        }
    }
    let pass = n_relations.pass && m_relations.pass && first_noncommuting.is_none();
    PeriodicityReport {
        split: split.clone(),
        omega,
        n_images,
        n_relations,
        m_relations,
        first_noncommuting,
        pass,
    }
}

/// The periodicity generator map for `Cl_{p,q} ≅ Cl_{p−1,q−1} ⊗ Cl_{1,1}` (A = 0).
pub fn build_periodicity_map(p: usize, q: usize) -> Result<PeriodicityReport> {
    let ctx = FormContext::diagonal_pq(p, q)?;
    let split = witt_split(&ctx)?;
    let cl = CliffordAlgebra::new(ctx);
    Ok(periodicity_check(&cl, &split))
}

/// The two factors of a decomposition embedded in the combined algebra; the
/// (possibly deformed) tensor product of `u ⊗ v` is `embed_left(u) embed_right(v)`.
#[derive(Debug)]
pub struct TensorContext {
    pub combined: CliffordAlgebra,
    pub left: CliffordAlgebra,
    pub right: CliffordAlgebra,
    pub split: WittSplit,
    left_images: Vec<Multivector>,
}

impl TensorContext {
    /// Requires `−det(g_M)` to be a rational square so that the `N` images can be
    /// normalized to the relations of `g_N`.
    pub fn new(ctx: &FormContext, split: WittSplit) -> Result<TensorContext> {
        let combined = CliffordAlgebra::new(ctx.clone());
        let [m1, m2] = split.m_indices;
        let g = ctx.g();
        let g_m = restrict(g, &split.m_indices);
        let root = rational_sqrt(&-linalg::determinant(&g_m)).ok_or_else(|| {
            Error::Invalid("−det(g_M) is not a rational square; cannot normalize the embedding".into())
        })?;
        let mut omega = combined.generator_product(&[m1, m2])?;
        omega.add_term(Blade::UNIT, -&g[m1 - 1][m2 - 1]);
        let omega = omega.scale(&root.inv().expect("nonzero"));
        let left_images = split
            .n_indices
            .iter()
            .map(|&i| combined.mul(&Multivector::basis(i), &omega))
            .collect();
        let left = CliffordAlgebra::new(FormContext::from_parts(
            &restrict(g, &split.n_indices),
            &restrict(ctx.a(), &split.n_indices),
            ctx.ring(),
        )?);
        let right = CliffordAlgebra::new(FormContext::from_parts(
            &g_m,
            &restrict(ctx.a(), &split.m_indices),
            ctx.ring(),
        )?);
        Ok(TensorContext {
            combined,
            left,
            right,
            split,
            left_images,
        })
    }

    fn embed(&self, factor: &CliffordAlgebra, images: &[Multivector], u: &Multivector) -> Multivector {
        let mono = factor.to_monomial_basis(u);
        let mut out = Multivector::zero();
        for (b, c) in mono.terms() {
            let word: Vec<&Multivector> = b.indices().iter().map(|&i| &images[i - 1]).collect();
            out.add_scaled(&self.combined.mul_all(word), c);
        }
        out
    }

    /// Image of an element of `Cl(B|_N)` (indexed 1..|N|).
    pub fn embed_left(&self, u: &Multivector) -> Multivector {
        self.embed(&self.left, &self.left_images, u)
    }

    /// Image of an element of `Cl(B|_M)` (indexed 1..2).
    pub fn embed_right(&self, u: &Multivector) -> Multivector {
        let images: Vec<Multivector> = self
            .split
            .m_indices
            .iter()
            .map(|&i| Multivector::basis(i))
            .collect();
        self.embed(&self.right, &images, u)
    }

    pub fn tensor(&self, u: &Multivector, v: &Multivector) -> Multivector {
        self.combined.mul(&self.embed_left(u), &self.embed_right(v))
    }

    /// `dim Cl(N) · dim Cl(M)`.
    pub fn dimension(&self) -> usize {
        self.left.size() * self.right.size()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Decomposable,
    Deformed,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub verdict: Verdict,
    pub split: WittSplit,
    pub f: Multivector,
    /// Terms `e_i ∧ e_j` of `F` with one index in `N` and one in `M`.
    pub connecting: Multivector,
    /// Index pairs carrying the connecting terms.
    pub witness_pairs: Vec<(usize, usize)>,
    /// Whether `g` has no entries between `N` and `M`.
    pub g_orthogonal: bool,
    /// Present for decomposable forms.
    pub periodicity: Option<PeriodicityReport>,
}

/// Splits off `M` and looks for connecting terms of `F` between `N` and `M`.
pub fn decompose(ctx: &FormContext) -> Result<Decomposition> {
    let split = witt_split(ctx)?;
    let f = bivector_from_antisym(ctx)?;
    let connecting = f.filter(|b| {
        let idx = b.indices();
        idx.len() == 2 && split.is_cross_pair(idx[0], idx[1])
    });
    let witness_pairs = connecting
        .terms()
        .map(|(b, _)| {
            let idx = b.indices();
            (idx[0], idx[1])
        })
        .collect();
    let g = ctx.g();
    let g_orthogonal = split
        .cross_pairs()
        .iter()
        .all(|&(x, y)| g[x - 1][y - 1].is_zero());
    if connecting.is_zero() {
        if !g_orthogonal {
            return Err(Error::Invalid(
                "the chosen split is not g-orthogonal and F has no connecting terms".into(),
            ));
        }
        let cl = CliffordAlgebra::new(ctx.clone());
        let periodicity = periodicity_check(&cl, &split);
        return Ok(Decomposition {
            verdict: Verdict::Decomposable,
            split,
            f,
            connecting,
            witness_pairs,
            g_orthogonal,
            periodicity: Some(periodicity),
        });
    }
    Ok(Decomposition {
        verdict: Verdict::Deformed,
        split,
        f,
        connecting,
        witness_pairs,
        g_orthogonal,
        periodicity: None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossPairWitness {
    pub n_index: usize,
    pub m_index: usize,
    /// `x y + y x − 2 g(x, y)`; zero in every `Cl(B)`.
    pub anticommutator_residual: Multivector,
    /// `[x, y]_B − [x, y]_g`, equal to `2 A(x, y)`.
    pub commutator_deviation: Multivector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutatorWitness {
    pub pairs: Vec<CrossPairWitness>,
    pub deformed: bool,
}

/// Compares cross-factor commutators in `Cl(B)` with the undeformed `Cl(g)`.
pub fn deformation_commutator_witness(ctx: &FormContext, split: &WittSplit) -> CommutatorWitness {
    let full = CliffordAlgebra::new(ctx.clone());
    let sym = CliffordAlgebra::new(ctx.symmetric_context());
    let g = ctx.g();
    let pairs: Vec<CrossPairWitness> = split
        .cross_pairs()
        .into_iter()
        .map(|(xi, yi)| {
            let x = Multivector::basis(xi);
            let y = Multivector::basis(yi);
            let mut anticommutator_residual = full.anticommutator(&x, &y);
            anticommutator_residual.add_term(Blade::UNIT, -(&g[xi - 1][yi - 1] + &g[xi - 1][yi - 1]));
            let commutator_deviation = &full.commutator(&x, &y) - &sym.commutator(&x, &y);
            CrossPairWitness {
                n_index: xi,
                m_index: yi,
                anticommutator_residual,
                commutator_deviation,
            }
        })
        .collect();
    let deformed = pairs.iter().any(|p| !p.commutator_deviation.is_zero());
    CommutatorWitness { pairs, deformed }
}

/// The 4×4 form of two coupled `Cl_{1,1}(B)` blocks:
///
/// ```text
/// [ 1  a  n11 n12 ]
/// [ 0 -1  n21 n22 ]
/// [ 0  0  1   a   ]
/// [ 0  0  0  -1   ]
/// ```
pub fn coupled_block_form(a: &Scalar, n: [[Scalar; 2]; 2]) -> Result<FormContext> {
    let z = Scalar::zero;
    let one = Scalar::from_int(1);
    let m1 = Scalar::from_int(-1);
    let [[n11, n12], [n21, n22]] = n;
    let b = vec![
        vec![one.clone(), a.clone(), n11, n12],
        vec![z(), m1.clone(), n21, n22],
        vec![z(), z(), one, a.clone()],
        vec![z(), z(), z(), m1],
    ];
    crate::forms::split_form(b, Ring::Rational)
}
