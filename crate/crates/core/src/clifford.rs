//! The Clifford product of `Cl(B, V)` realized on `∧V` (Chevalley construction).
//!
//! A generator acts by `L_i u = e_i ⌋_B u + e_i ∧ u`. Every element `u` is first
//! rewritten in the Clifford-monomial basis `e_{i1} e_{i2} … e_{ik}` (ascending
//! indices); then `u v = Σ_I c_I L_{i1} ∘ … ∘ L_{ik} (v)`. The monomial/wedge
//! conversion is unitriangular in the grade filtration, hence exactly invertible.

use std::sync::OnceLock;

use num::traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exterior::{contract_basis, wedge_sign, Blade, Multivector};
use crate::forms::{FormContext, FormKind};
use crate::linalg::{self, Matrix};
use crate::scalar::Scalar;

/// Above this dimension products are computed directly instead of from a cached table.
pub const TABLE_CACHE_MAX_DIM: usize = 6;

/// Clifford monomials expressed in the wedge basis and the inverse conversion.
/// Both maps are keyed by blade bit patterns; entry `I` of `to_wedge` is the
/// ascending monomial `e_{i1} ⋯ e_{ik}` and entry `I` of `to_monomial` is the
/// wedge blade `e_{i1} ∧ ⋯ ∧ e_{ik}` written over monomials.
#[derive(Clone, Debug)]
pub struct MonomialTable {
    pub to_wedge: Vec<Multivector>,
    pub to_monomial: Vec<Multivector>,
}

/// `Cl(B, V)` with lazily built, shared conversion and product tables.
#[derive(Debug)]
pub struct CliffordAlgebra {
    ctx: FormContext,
    monomials: OnceLock<MonomialTable>,
    products: OnceLock<Vec<Multivector>>,
}

impl Clone for CliffordAlgebra {
    fn clone(&self) -> Self {
        CliffordAlgebra::new(self.ctx.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub pass: bool,
    /// First failing pair (1-based generator positions) with its residual
    /// `g_i g_j + g_j g_i − 2 t_ij`.
    pub first_violation: Option<(usize, usize, Multivector)>,
    pub pairs_checked: usize,
}

fn wedge_generator(i: usize, u: &Multivector) -> Multivector {
    let e = Blade::basis(i);
    let mut out = Multivector::zero();
    for (b, s) in u.terms() {
        if b.0 & e.0 != 0 {
            continue;
        }
        let sign = wedge_sign(e, b);
        out.add_term(Blade(b.0 | e.0), if sign > 0 { s.clone() } else { -s });
    }
    out
}

impl CliffordAlgebra {
    pub fn new(ctx: FormContext) -> Self {
        CliffordAlgebra {
            ctx,
            monomials: OnceLock::new(),
            products: OnceLock::new(),
        }
    }

    pub fn ctx(&self) -> &FormContext {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.ctx.dim()
    }

    /// Number of basis blades, `2^n`.
    pub fn size(&self) -> usize {
        1 << self.dim()
    }

    /// `L_i u = e_i ⌋_B u + e_i ∧ u`.
    pub fn apply_generator(&self, i: usize, u: &Multivector) -> Result<Multivector> {
        self.ctx.check_index(i)?;
        Ok(self.apply_generator_unchecked(i, u))
    }

    fn apply_generator_unchecked(&self, i: usize, u: &Multivector) -> Multivector {
        let mut out = contract_basis(i, u, self.ctx.b());
        out.add_scaled(&wedge_generator(i, u), &Scalar::one());
        out
    }

    /// `x u` for a vector `x`: `x ⌋_B u + x ∧ u`.
    pub fn apply_vector(&self, x: &Multivector, u: &Multivector) -> Multivector {
        let mut out = Multivector::zero();
        for (b, c) in x.terms() {
            debug_assert_eq!(b.grade(), 1);
            let i = b.max_index();
            out.add_scaled(&self.apply_generator_unchecked(i, u), c);
        }
        out
    }

    /// `L_{i1} ∘ ⋯ ∘ L_{ik}` applied to `v`, innermost with the largest index.
    fn apply_monomial(&self, monomial: Blade, v: &Multivector) -> Multivector {
        let mut acc = v.clone();
        for i in monomial.indices().into_iter().rev() {
            acc = self.apply_generator_unchecked(i, &acc);
            if acc.is_zero() {
                break;
            }
        }
        acc
    }

    pub fn monomial_table(&self) -> &MonomialTable {
        self.monomials.get_or_init(|| {
            let size = self.size();
            let mut to_wedge = vec![Multivector::zero(); size];
            to_wedge[0] = Multivector::one();
            for bits in 1..size {
                let low = bits.trailing_zeros() as usize;
                let rest = bits & (bits - 1);
                to_wedge[bits] = self.apply_generator_unchecked(low + 1, &to_wedge[rest]);
            }
            // Unitriangular inversion by increasing grade: e_I(∧) = m_I − Σ_{J lower} c_J e_J(∧).
            let mut order: Vec<usize> = (0..size).collect();
            order.sort_by_key(|&b| ((b as u32).count_ones(), b));
            let mut to_monomial = vec![Multivector::zero(); size];
            for &bits in &order {
                let mut w = Multivector::blade(Blade(bits as u32));
                for (j, c) in to_wedge[bits].terms() {
                    if j.0 as usize == bits {
                        continue;
                    }
                    w.add_scaled(&to_monomial[j.0 as usize], &-c);
                }
                to_monomial[bits] = w;
            }
            MonomialTable { to_wedge, to_monomial }
        })
    }

    /// Coordinates of `u` over Clifford monomials (keyed by blade bit patterns).
    pub fn to_monomial_basis(&self, u: &Multivector) -> Multivector {
        let table = self.monomial_table();
        let mut out = Multivector::zero();
        for (b, c) in u.terms() {
            out.add_scaled(&table.to_monomial[b.0 as usize], c);
        }
        out
    }

    /// Inverse of [`Self::to_monomial_basis`].
    pub fn from_monomial_basis(&self, m: &Multivector) -> Multivector {
        let table = self.monomial_table();
        let mut out = Multivector::zero();
        for (b, c) in m.terms() {
            out.add_scaled(&table.to_wedge[b.0 as usize], c);
        }
        out
    }

    fn blade_product_direct(&self, a: Blade, b: Blade) -> Multivector {
        let table = self.monomial_table();
        let v = Multivector::blade(b);
        let mut out = Multivector::zero();
        for (m, c) in table.to_monomial[a.0 as usize].terms() {
            out.add_scaled(&self.apply_monomial(m, &v), c);
        }
        out
    }

    /// All blade-pair products, row-major `[a * 2^n + b]`, built once.
    pub fn product_table(&self) -> &[Multivector] {
        self.products.get_or_init(|| {
            let size = self.size();
            self.monomial_table();
            (0..size * size)
                .into_par_iter()
                .map(|k| self.blade_product_direct(Blade((k / size) as u32), Blade((k % size) as u32)))
                .collect()
        })
    }

    /// The associative Clifford product `u v` in `Cl(B, V)`.
    pub fn product(&self, u: &Multivector, v: &Multivector) -> Result<Multivector> {
        self.ctx.check_fits(u)?;
        self.ctx.check_fits(v)?;
        Ok(self.mul(u, v))
    }

    /// Unchecked product for callers that already validated their inputs.
    pub fn mul(&self, u: &Multivector, v: &Multivector) -> Multivector {
        if u.is_zero() || v.is_zero() {
            return Multivector::zero();
        }
        if u.is_homogeneous(1) {
            return self.apply_vector(u, v);
        }
        if self.dim() <= TABLE_CACHE_MAX_DIM {
            let size = self.size();
            let table = self.product_table();
            let mut out = Multivector::zero();
            for (a, x) in u.terms() {
                for (b, y) in v.terms() {
                    out.add_scaled(&table[a.0 as usize * size + b.0 as usize], &(x * y));
                }
            }
            return out;
        }
        let m = self.to_monomial_basis(u);
        let mut out = Multivector::zero();
        for (mono, c) in m.terms() {
            out.add_scaled(&self.apply_monomial(mono, v), c);
        }
        out
    }

    /// Left-to-right product of a sequence.
    pub fn mul_all<'a>(&self, factors: impl IntoIterator<Item = &'a Multivector>) -> Multivector {
        factors
            .into_iter()
            .fold(Multivector::one(), |acc, f| self.mul(&acc, f))
    }

    pub fn commutator(&self, u: &Multivector, v: &Multivector) -> Multivector {
        &self.mul(u, v) - &self.mul(v, u)
    }

    pub fn anticommutator(&self, u: &Multivector, v: &Multivector) -> Multivector {
        &self.mul(u, v) + &self.mul(v, u)
    }

    /// Clifford product of the listed generators (1-based), in order.
    pub fn generator_product(&self, indices: &[usize]) -> Result<Multivector> {
        let mut acc = Multivector::one();
        for &i in indices.iter().rev() {
            acc = self.apply_generator(i, &acc)?;
        }
        Ok(acc)
    }

    /// `e_1 e_2 ⋯ e_n`.
    pub fn volume_element(&self) -> Multivector {
        let all: Vec<usize> = (1..=self.dim()).collect();
        self.generator_product(&all).expect("indices in range")
    }

    /// Checks `g_i g_j + g_j g_i = 2 t_ij 1` for every pair `i ≤ j`.
    pub fn verify_generator_relations(
        &self,
        gens: &[Multivector],
        target: &Matrix,
    ) -> RelationReport {
        let mut checked = 0;
        for i in 0..gens.len() {
            for j in i..gens.len() {
                checked += 1;
                let t = target
                    .get(i)
                    .and_then(|row| row.get(j))
                    .cloned()
                    .unwrap_or_else(Scalar::zero);
                let mut residual = self.anticommutator(&gens[i], &gens[j]);
                residual.add_term(Blade::UNIT, -(&t + &t));
                if !residual.is_zero() {
                    return RelationReport {
                        pass: false,
                        first_violation: Some((i + 1, j + 1, residual)),
                        pairs_checked: checked,
                    };
                }
            }
        }
        RelationReport {
            pass: true,
            first_violation: None,
            pairs_checked: checked,
        }
    }

    /// Matrix of left multiplication by `u` on the wedge-blade basis.
    pub fn regular_representation(&self, u: &Multivector) -> Matrix {
        let size = self.size();
        let mut m = linalg::zeros(size, size);
        for col in 0..size {
            let image = self.mul(u, &Multivector::blade(Blade(col as u32)));
            for (b, s) in image.terms() {
                m[b.0 as usize][col] = s.clone();
            }
        }
        m
    }

    /// The canonical generators `e_1, …, e_n`.
    pub fn generators(&self) -> Vec<Multivector> {
        (1..=self.dim()).map(Multivector::basis).collect()
    }

    /// `Q(x)` through the square law, for callers holding a vector multivector.
    pub fn square_scalar(&self, x: &Multivector) -> Result<Scalar> {
        if !x.is_homogeneous(1) {
            return Err(Error::Invalid("expected a vector".into()));
        }
        let c = x.vector_coeffs(self.dim());
        Ok(self.ctx.pairing(FormKind::G, &c, &c))
    }

    /// Power by repeated multiplication.
    pub fn pow(&self, u: &Multivector, k: u32) -> Multivector {
        (0..k).fold(Multivector::one(), |acc, _| self.mul(&acc, u))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::split_form;
    use crate::scalar::Ring;

    fn q(s: &str) -> Scalar {
        s.parse().unwrap()
    }

    fn mv(s: &str) -> Multivector {
        s.parse().unwrap()
    }

    fn example_two(a: &str) -> CliffordAlgebra {
        let b = vec![vec![q("1"), q(a)], vec![q("0"), q("-1")]];
        CliffordAlgebra::new(split_form(b, Ring::Rational).unwrap())
    }

    #[test]
    fn generator_action() {
        let cl = example_two("1");
        assert_eq!(cl.apply_generator(1, &Multivector::one()).unwrap(), mv("e1"));
        assert_eq!(cl.apply_generator(1, &mv("e2")).unwrap(), mv("1 + e1^e2"));
        let u = mv("2 - e1 + 3/4*e2 + 5*e1^e2");
        let twice = cl
            .apply_generator(1, &cl.apply_generator(1, &u).unwrap())
            .unwrap();
        assert_eq!(twice, u);
        assert!(cl.apply_generator(3, &u).is_err());
    }

    #[test]
    fn example_two_products() {
        let cl = example_two("2/3");
        let e1 = mv("e1");
        let e2 = mv("e2");
        assert_eq!(cl.mul(&e1, &e2), mv("2/3 + e1^e2"));
        assert_eq!(cl.mul(&e2, &e1), mv("-e1^e2"));
        assert_eq!(cl.anticommutator(&e1, &e2), mv("2/3"));
        assert_eq!(cl.mul(&e1, &e1), mv("1"));
    }

    #[test]
    fn parametric_idempotent_instance() {
        let cl = example_two("0");
        let f = mv("1/2 + 2/5*e1 + 3/10*e1^e2");
        assert_eq!(cl.mul(&f, &f), f);
    }

    #[test]
    fn monomial_table_is_unitriangular() {
        let cl = example_two("3");
        let t = cl.monomial_table();
        for (bits, m) in t.to_wedge.iter().enumerate() {
            let b = Blade(bits as u32);
            assert_eq!(m.coeff(b), Scalar::one());
            assert!(m.terms().all(|(c, _)| c == b || c.grade() < b.grade()));
        }
        let u = mv("1 - e2 + 7*e1^e2");
        assert_eq!(cl.from_monomial_basis(&cl.to_monomial_basis(&u)), u);
    }

    #[test]
    fn regular_representation_basics() {
        let cl = example_two("1");
        assert_eq!(cl.regular_representation(&Multivector::one()), linalg::identity(4));
        let r1 = cl.regular_representation(&mv("e1"));
        assert_eq!(linalg::matmul(&r1, &r1), linalg::identity(4));
        let u = mv("1 + e2");
        let v = mv("e1 - e1^e2");
        assert_eq!(
            cl.regular_representation(&cl.mul(&u, &v)),
            linalg::matmul(&cl.regular_representation(&u), &cl.regular_representation(&v))
        );
    }

    #[test]
    fn idempotent_regular_rep_has_rank_two() {
        let cl = example_two("0");
        let f = mv("1/2 + 2/5*e1 + 3/10*e1^e2");
        let r = cl.regular_representation(&f);
        assert_eq!(linalg::matmul(&r, &r), r);
        assert_eq!(linalg::rank(&r), 2);
    }

    #[test]
    fn relation_report_flags_duplicate_generator() {
        let cl = CliffordAlgebra::new(FormContext::diagonal_pq(1, 1).unwrap());
        let target = cl.ctx().g().clone();
        assert!(cl.verify_generator_relations(&cl.generators(), &target).pass);
        let report = cl.verify_generator_relations(&[mv("e1"), mv("e1")], &target);
        assert!(!report.pass);
        let (i, j, _) = report.first_violation.unwrap();
        assert_eq!((i, j), (1, 2));
    }

    #[test]
    fn gamma_five_regrading() {
        let cl = CliffordAlgebra::new(FormContext::diagonal_pq(1, 3).unwrap());
        let omega = cl.volume_element();
        assert_eq!(cl.mul(&omega, &omega), mv("-1"));
        let alphas: Vec<_> = cl.generators().iter().map(|e| cl.mul(e, &omega)).collect();
        assert!(alphas.iter().all(|a| a.is_homogeneous(3)));
        let report = cl.verify_generator_relations(&alphas, cl.ctx().g());
        assert!(report.pass, "{report:?}");
        assert_eq!(cl.mul(&alphas[0], &alphas[0]), mv("1"));
    }
}
