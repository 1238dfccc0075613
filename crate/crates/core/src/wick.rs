//! Wick isomorphism `Cl(B) ≅ Cl(g)` and the `A`-dependent multivector grading.
//!
//! Two independent constructions of the same map live here:
//!
//! * the dotted-wedge route: `e_i ∧̇ u = e_i ∧ u + e_i ⌋_A u`, extended to
//!   ∧̇-blades right to left, gives a unitriangular change of basis;
//! * the transport route: monomials of `Cl(g)` evaluated in `Cl(B)`
//!   ([`WickTransport`]), or equivalently contraction by the outer exponential
//!   `e^F ⌋_g u` with `A(x, y) = F ⌋_g (x ∧ y)`.
//!
//! The grade projector `<u>^A_r` is taken in the ∧̇-blade basis.

use crate::clifford::CliffordAlgebra;
use crate::error::{Error, Result};
use crate::exterior::{contract_basis, contract_left, Blade, Multivector};
use crate::forms::{bivector_from_antisym, FormContext};
use crate::scalar::Scalar;

/// `Σ_k (1/k!) ∧^k F`, which terminates once the wedge power vanishes.
pub fn outer_exp(f: &Multivector) -> Result<Multivector> {
    if !f.is_homogeneous(2) {
        return Err(Error::NotBivector);
    }
    let mut out = Multivector::one();
    let mut power = Multivector::one();
    let mut k = 1i64;
    loop {
        power = power.wedge(f).scale(&Scalar::frac(1, k));
        if power.is_zero() {
            break;
        }
        out = &out + &power;
        k += 1;
    }
    Ok(out)
}

/// `x ∧̇ u = x ∧ u + x ⌋_A u` for a vector `x`; a general left argument is
/// expanded over ∧̇-blades and applied right to left.
pub fn dotted_wedge(ctx: &FormContext, x: &Multivector, u: &Multivector) -> Result<Multivector> {
    ctx.check_fits(x)?;
    ctx.check_fits(u)?;
    if x.is_homogeneous(1) {
        return Ok(dotted_vector(ctx, x, u));
    }
    let basis = DottedBasis::new(ctx);
    let coords = basis.to_dotted(x);
    let mut out = Multivector::zero();
    for (blade, c) in coords.terms() {
        let mut acc = u.clone();
        for i in blade.indices().into_iter().rev() {
            acc = dotted_generator(ctx, i, &acc);
        }
        out.add_scaled(&acc, c);
    }
    Ok(out)
}

fn dotted_generator(ctx: &FormContext, i: usize, u: &Multivector) -> Multivector {
    let e = Multivector::basis(i);
    &e.wedge(u) + &contract_basis(i, u, ctx.a())
}

fn dotted_vector(ctx: &FormContext, x: &Multivector, u: &Multivector) -> Multivector {
    let mut out = Multivector::zero();
    for (b, c) in x.terms() {
        out.add_scaled(&dotted_generator(ctx, b.max_index(), u), c);
    }
    out
}

/// Change of basis between wedge blades and ∧̇-blades `e_{i1} ∧̇ ⋯ ∧̇ e_{ik}`.
#[derive(Clone, Debug)]
pub struct DottedBasis {
    dim: usize,
    /// Entry `I`: the ∧̇-blade `I` in the wedge basis.
    pub dotted_to_wedge: Vec<Multivector>,
    /// Entry `I`: the wedge blade `I` in ∧̇-coordinates.
    pub wedge_to_dotted: Vec<Multivector>,
}

impl DottedBasis {
    pub fn new(ctx: &FormContext) -> DottedBasis {
        let size = 1usize << ctx.dim();
        let mut to_wedge = vec![Multivector::zero(); size];
        to_wedge[0] = Multivector::one();
        for bits in 1..size {
            let low = bits.trailing_zeros() as usize;
            let rest = bits & (bits - 1);
            to_wedge[bits] = dotted_generator(ctx, low + 1, &to_wedge[rest]);
        }
        let mut order: Vec<usize> = (0..size).collect();
        order.sort_by_key(|&b| ((b as u32).count_ones(), b));
        let mut to_dotted = vec![Multivector::zero(); size];
        for &bits in &order {
            let mut w = Multivector::blade(Blade(bits as u32));
            for (j, c) in to_wedge[bits].terms() {
                if j.0 as usize != bits {
                    w.add_scaled(&to_dotted[j.0 as usize], &-c);
                }
            }
            to_dotted[bits] = w;
        }
        DottedBasis {
            dim: ctx.dim(),
            dotted_to_wedge: to_wedge,
            wedge_to_dotted: to_dotted,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn to_dotted(&self, u: &Multivector) -> Multivector {
        let mut out = Multivector::zero();
        for (b, c) in u.terms() {
            out.add_scaled(&self.wedge_to_dotted[b.0 as usize], c);
        }
        out
    }

    pub fn from_dotted(&self, coords: &Multivector) -> Multivector {
        let mut out = Multivector::zero();
        for (b, c) in coords.terms() {
            out.add_scaled(&self.dotted_to_wedge[b.0 as usize], c);
        }
        out
    }

    /// `<u>^A_r`: keep only ∧̇-grade `r`.
    pub fn project(&self, u: &Multivector, r: usize) -> Multivector {
        self.from_dotted(&self.to_dotted(u).grade_part(r))
    }
}

/// One-shot `<u>^A_r` in the context's grading.
pub fn a_grade_project(ctx: &FormContext, u: &Multivector, r: usize) -> Result<Multivector> {
    ctx.check_fits(u)?;
    if r > ctx.dim() {
        return Err(Error::Invalid(format!(
            "grade {r} exceeds dimension {}",
            ctx.dim()
        )));
    }
    Ok(DottedBasis::new(ctx).project(u, r))
}

/// The outer-exponential data of a context with nondegenerate `g`.
#[derive(Clone, Debug)]
pub struct WickData {
    pub f: Multivector,
    pub exp_f: Multivector,
    pub exp_neg_f: Multivector,
    pub dotted: DottedBasis,
    g: crate::linalg::Matrix,
}

impl WickData {
    pub fn new(ctx: &FormContext) -> Result<WickData> {
        let f = bivector_from_antisym(ctx)?;
        let exp_f = outer_exp(&f)?;
        let exp_neg_f = outer_exp(&-&f)?;
        Ok(WickData {
            f,
            exp_f,
            exp_neg_f,
            dotted: DottedBasis::new(ctx),
            g: ctx.g().clone(),
        })
    }

    /// `φ⁻¹(u) = e^F ⌋_g u`: maps `Cl(g)` (wedge basis) to `Cl(B)` (wedge basis).
    pub fn exp_transport(&self, u: &Multivector) -> Multivector {
        contract_left(&self.exp_f, u, &self.g)
    }

    /// `φ(u) = e^{−F} ⌋_g u`.
    pub fn exp_transport_inverse(&self, u: &Multivector) -> Multivector {
        contract_left(&self.exp_neg_f, u, &self.g)
    }

    /// `<u>^A_r` computed through the exponential transport:
    /// `φ⁻¹(<φ(u)>_r)` with the plain wedge grading in `Cl(g)`.
    pub fn project_via_exp(&self, u: &Multivector, r: usize) -> Multivector {
        self.exp_transport(&self.exp_transport_inverse(u).grade_part(r))
    }
}

/// Residuals of the three outer-exponential identities; all vanish exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WickResiduals {
    /// `e^{−F} ∧ e^F − 1`
    pub inverse: Multivector,
    /// `e^{−F} ∧ x ∧ e^F ∧ u − x ∧ u`
    pub wedge: Multivector,
    /// `e^{−F} ∧ (x ⌋_g (e^F ∧ u)) − (x ⌋_g u + (x ⌋_g F) ∧ u)`
    pub contraction: Multivector,
}

impl WickResiduals {
    pub fn all_zero(&self) -> bool {
        self.inverse.is_zero() && self.wedge.is_zero() && self.contraction.is_zero()
    }
}

pub fn verify_wick_identities(
    ctx: &FormContext,
    f: &Multivector,
    x: &Multivector,
    u: &Multivector,
) -> Result<WickResiduals> {
    if !crate::forms::signature(ctx).is_nondegenerate() {
        return Err(Error::NoWickBivector);
    }
    if !x.is_homogeneous(1) {
        return Err(Error::Invalid("x must be a vector".into()));
    }
    ctx.check_fits(f)?;
    ctx.check_fits(x)?;
    ctx.check_fits(u)?;
    let g = ctx.g();
    let ef = outer_exp(f)?;
    let enf = outer_exp(&-f)?;
    let inverse = &enf.wedge(&ef) - &Multivector::one();
    let wedge = &enf.wedge(x).wedge(&ef).wedge(u) - &x.wedge(u);
    let lhs = enf.wedge(&contract_left(x, &ef.wedge(u), g));
    let rhs = &contract_left(x, u, g) + &contract_left(x, f, g).wedge(u);
    Ok(WickResiduals {
        inverse,
        wedge,
        contraction: &lhs - &rhs,
    })
}

/// The generator-to-generator isomorphism `φ⁻¹ : Cl(g) → Cl(B)`, evaluated by
/// rewriting over Clifford monomials in `Cl(g)` and re-evaluating them in `Cl(B)`.
#[derive(Clone, Debug)]
pub struct WickTransport {
    pub symmetric: CliffordAlgebra,
    pub full: CliffordAlgebra,
}

impl WickTransport {
    pub fn new(ctx: &FormContext) -> WickTransport {
        WickTransport {
            symmetric: CliffordAlgebra::new(ctx.symmetric_context()),
            full: CliffordAlgebra::new(ctx.clone()),
        }
    }

    /// `φ⁻¹(u)` for `u ∈ Cl(g)`.
    pub fn forward(&self, u: &Multivector) -> Multivector {
        self.full
            .from_monomial_basis(&self.symmetric.to_monomial_basis(u))
    }

    /// `φ(u)` for `u ∈ Cl(B)`.
    pub fn backward(&self, u: &Multivector) -> Multivector {
        self.symmetric
            .from_monomial_basis(&self.full.to_monomial_basis(u))
    }

    /// `<u>^A_r = φ⁻¹(<φ(u)>_r)`.
    pub fn project(&self, u: &Multivector, r: usize) -> Multivector {
        self.forward(&self.backward(u).grade_part(r))
    }
}

/// One-shot `φ⁻¹(u)`.
pub fn wick_transport(ctx: &FormContext, u: &Multivector) -> Result<Multivector> {
    ctx.check_fits(u)?;
    Ok(WickTransport::new(ctx).forward(u))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GradingComparison {
    Equal,
    Witness {
        element: Multivector,
        grade: usize,
        first: Multivector,
        second: Multivector,
    },
}

/// Compares the gradings of `Cl(g + A1)` and `Cl(g + A2)`; for `A1 ≠ A2` returns
/// a bivector whose scalar projections differ.
pub fn grading_witness(ctx1: &FormContext, ctx2: &FormContext) -> Result<GradingComparison> {
    if ctx1.dim() != ctx2.dim() || ctx1.g() != ctx2.g() {
        return Err(Error::Incomparable("symmetric parts differ".into()));
    }
    let n = ctx1.dim();
    let Some((i, j)) = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .find(|&(i, j)| ctx1.a()[i][j] != ctx2.a()[i][j])
    else {
        return Ok(GradingComparison::Equal);
    };
    let element = Multivector::blade(Blade(Blade::basis(i + 1).0 | Blade::basis(j + 1).0));
    let first = DottedBasis::new(ctx1).project(&element, 0);
    let second = DottedBasis::new(ctx2).project(&element, 0);
    debug_assert_ne!(first, second);
    Ok(GradingComparison::Witness {
        element,
        grade: 0,
        first,
        second,
    })
}

/// `<u>^A_0` as a scalar.
pub fn scalar_projection(basis: &DottedBasis, u: &Multivector) -> Scalar {
    basis.project(u, 0).scalar_part()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::split_form;
    use crate::linalg;
    use crate::scalar::Ring;

    fn q(s: &str) -> Scalar {
        s.parse().unwrap()
    }

    fn mv(s: &str) -> Multivector {
        s.parse().unwrap()
    }

    fn ctx_with_a12(alpha: &str) -> FormContext {
        let mut a = linalg::zeros(2, 2);
        a[0][1] = q(alpha);
        a[1][0] = -q(alpha);
        FormContext::from_parts(&linalg::identity(2), &a, Ring::Rational).unwrap()
    }

    #[test]
    fn outer_exp_examples() {
        assert_eq!(outer_exp(&mv("e1^e2")).unwrap(), mv("1 + e1^e2"));
        assert_eq!(
            outer_exp(&mv("e1^e2 + e3^e4")).unwrap(),
            mv("1 + e1^e2 + e3^e4 + e1^e2^e3^e4")
        );
        assert_eq!(outer_exp(&Multivector::zero()).unwrap(), Multivector::one());
        assert_eq!(outer_exp(&mv("e1")), Err(Error::NotBivector));
    }

    #[test]
    fn dotted_wedge_examples() {
        let ctx = ctx_with_a12("5/3");
        let got = dotted_wedge(&ctx, &mv("e1"), &mv("e2")).unwrap();
        assert_eq!(got, mv("5/3 + e1^e2"));

        let ex2 = split_form(
            vec![vec![q("1"), q("1")], vec![q("0"), q("-1")]],
            Ring::Rational,
        )
        .unwrap();
        assert_eq!(dotted_wedge(&ex2, &mv("e1"), &mv("e2")).unwrap(), mv("1/2 + e1^e2"));

        let sym = FormContext::diagonal_pq(2, 1).unwrap();
        let u = mv("1 + e2 - e1^e3");
        for x in [mv("e1"), mv("e1^e2"), mv("2 + e3")] {
            assert_eq!(dotted_wedge(&sym, &x, &u).unwrap(), x.wedge(&u));
        }
    }

    #[test]
    fn a_grade_projection_examples() {
        let ctx = ctx_with_a12("2/7");
        let e12 = mv("e1^e2");
        assert_eq!(a_grade_project(&ctx, &e12, 0).unwrap(), mv("-2/7"));
        assert_eq!(a_grade_project(&ctx, &e12, 2).unwrap(), mv("e1^e2 + 2/7"));
        assert!(a_grade_project(&ctx, &e12, 1).unwrap().is_zero());
    }

    #[test]
    fn hestenes_versus_chevalley_scalar_parts() {
        let ex2 = split_form(
            vec![vec![q("1"), q("3")], vec![q("0"), q("-1")]],
            Ring::Rational,
        )
        .unwrap();
        let cl = CliffordAlgebra::new(ex2.clone());
        let xy = cl.mul(&mv("e1"), &mv("e2"));
        // plain scalar part is B_12, A-graded scalar part is g_12
        assert_eq!(xy.scalar_part(), q("3"));
        assert_eq!(
            a_grade_project(&ex2, &xy, 0).unwrap().scalar_part(),
            q("3/2")
        );
    }

    #[test]
    fn three_routes_agree_on_blades() {
        let ctx = split_form(
            vec![
                vec![q("1"), q("2"), q("-1/3")],
                vec![q("1/2"), q("-1"), q("0")],
                vec![q("1"), q("4"), q("2")],
            ],
            Ring::Rational,
        )
        .unwrap();
        let wick = WickData::new(&ctx).unwrap();
        let transport = WickTransport::new(&ctx);
        for bits in 0..8u32 {
            let b = Multivector::blade(Blade(bits));
            let dotted = wick.dotted.dotted_to_wedge[bits as usize].clone();
            assert_eq!(wick.exp_transport(&b), dotted, "exp route, blade {bits}");
            assert_eq!(transport.forward(&b), dotted, "monomial route, blade {bits}");
        }
    }

    #[test]
    fn transport_examples() {
        let ctx = ctx_with_a12("3/4");
        let t = WickTransport::new(&ctx);
        assert_eq!(t.forward(&mv("e1")), mv("e1"));
        let prod_g = t.symmetric.mul(&mv("e1"), &mv("e2"));
        assert_eq!(t.forward(&prod_g), &mv("3/4") + &prod_g);
    }

    #[test]
    fn grading_witness_examples() {
        let zero = ctx_with_a12("0");
        let alpha = ctx_with_a12("1/5");
        assert_eq!(grading_witness(&zero, &zero).unwrap(), GradingComparison::Equal);
        match grading_witness(&zero, &alpha).unwrap() {
            GradingComparison::Witness { element, grade, first, second } => {
                assert_eq!(element, mv("e1^e2"));
                assert_eq!(grade, 0);
                assert!(first.is_zero());
                assert_eq!(second, mv("-1/5"));
            }
            other => panic!("{other:?}"),
        }
        let other_g = FormContext::diagonal_pq(1, 1).unwrap();
        assert!(grading_witness(&zero, &other_g).is_err());
    }

    #[test]
    fn wick_identities_small() {
        let ctx = ctx_with_a12("1/3");
        let f = bivector_from_antisym(&ctx).unwrap();
        let r = verify_wick_identities(&ctx, &f, &mv("e1 - e2"), &mv("2 + e2")).unwrap();
        assert!(r.all_zero(), "{r:?}");
        let zero = verify_wick_identities(&ctx, &Multivector::zero(), &mv("e1"), &mv("e2")).unwrap();
        assert!(zero.all_zero());
    }
}
