//! Bilinear forms `B = g + A`: exact splitting, quadratic forms, signatures, and
//! the bivector `F` with `A(x, y) = F ⌋_g (x ∧ y)`.

use num::traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exterior::{contract_left, Blade, Multivector, BLADE_BITS};
use crate::linalg::{self, Matrix};
use crate::scalar::{Ring, Scalar};

pub const DEFAULT_MAX_DIM: usize = 12;

/// Which matrix drives a contraction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormKind {
    /// The full bilinear form `B`.
    B,
    /// The symmetric part `g`.
    G,
    /// The antisymmetric part `A`.
    A,
}

/// A bilinear form on an `n`-dimensional space with its cached symmetric and
/// antisymmetric parts. Identifies the algebra `Cl(B, V)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormContext {
    dim: usize,
    b: Matrix,
    g: Matrix,
    a: Matrix,
    ring: Ring,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    pub p: usize,
    pub q: usize,
    pub r: usize,
}

impl Signature {
    pub fn is_nondegenerate(&self) -> bool {
        self.r == 0
    }
}

/// Splits `B` into `g = (B + Bᵀ)/2` and `A = (B − Bᵀ)/2` with the default size limit.
pub fn split_form(b: Matrix, ring: Ring) -> Result<FormContext> {
    split_form_with_limit(b, ring, DEFAULT_MAX_DIM)
}

pub fn split_form_with_limit(b: Matrix, ring: Ring, max_dim: usize) -> Result<FormContext> {
    let n = b.len();
    if n == 0 {
        return Err(Error::Shape("empty matrix".into()));
    }
    if let Some((i, row)) = b.iter().enumerate().find(|(_, row)| row.len() != n) {
        return Err(Error::Shape(format!(
            "row {} has {} entries, expected {n}",
            i + 1,
            row.len()
        )));
    }
    if n > max_dim.min(BLADE_BITS) {
        return Err(Error::DimensionTooLarge {
            dim: n,
            max: max_dim.min(BLADE_BITS),
        });
    }
    if let Some(bad) = b.iter().flatten().find(|s| !s.fits(ring)) {
        return Err(Error::RingMismatch(bad.to_text()));
    }
    let half = Scalar::frac(1, 2);
    let mut g = linalg::zeros(n, n);
    let mut a = linalg::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            g[i][j] = &(&b[i][j] + &b[j][i]) * &half;
            a[i][j] = &(&b[i][j] - &b[j][i]) * &half;
        }
    }
    Ok(FormContext { dim: n, b, g, a, ring })
}

impl FormContext {
    /// Convenience constructor from a symmetric part and an antisymmetric part.
    pub fn from_parts(g: &Matrix, a: &Matrix, ring: Ring) -> Result<FormContext> {
        if g.len() != a.len() || !linalg::is_square(g) || !linalg::is_square(a) {
            return Err(Error::Shape("g and A must be square of equal size".into()));
        }
        let n = g.len();
        for i in 0..n {
            for j in 0..n {
                if g[i][j] != g[j][i] {
                    return Err(Error::Invalid("g is not symmetric".into()));
                }
                if a[i][j] != -&a[j][i] {
                    return Err(Error::NotAntisymmetric);
                }
            }
        }
        let b = (0..n)
            .map(|i| (0..n).map(|j| &g[i][j] + &a[i][j]).collect())
            .collect();
        split_form_with_limit(b, ring, BLADE_BITS)
    }

    /// `diag(1,…,1,−1,…,−1)` with `p` plus and `q` minus signs.
    pub fn diagonal_pq(p: usize, q: usize) -> Result<FormContext> {
        let n = p + q;
        let mut b = linalg::zeros(n, n);
        for (i, row) in b.iter_mut().enumerate() {
            row[i] = Scalar::from_int(if i < p { 1 } else { -1 });
        }
        split_form(b, Ring::Rational)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn b(&self) -> &Matrix {
        &self.b
    }

    pub fn g(&self) -> &Matrix {
        &self.g
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn matrix(&self, kind: FormKind) -> &Matrix {
        match kind {
            FormKind::B => &self.b,
            FormKind::G => &self.g,
            FormKind::A => &self.a,
        }
    }

    /// The same symmetric part with `A` removed: `Cl(g, V)`.
    pub fn symmetric_context(&self) -> FormContext {
        FormContext {
            dim: self.dim,
            b: self.g.clone(),
            g: self.g.clone(),
            a: linalg::zeros(self.dim, self.dim),
            ring: self.ring,
        }
    }

    pub fn has_antisymmetric_part(&self) -> bool {
        self.a.iter().flatten().any(|s| !s.is_zero())
    }

    pub fn is_diagonal_g(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| i == j || self.g[i][j].is_zero()))
    }

    /// Evaluates the chosen form on two vectors given by coefficients.
    pub fn pairing(&self, kind: FormKind, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let m = self.matrix(kind);
        let mut acc = Scalar::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() && !m[i][j].is_zero() {
                    acc += &(&(xi * &m[i][j]) * yj);
                }
            }
        }
        acc
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.dim {
            Err(Error::IndexOutOfRange { index: i, dim: self.dim })
        } else {
            Ok(())
        }
    }

    /// Rejects multivectors that use generators beyond this context.
    pub fn check_fits(&self, u: &Multivector) -> Result<()> {
        if u.max_index() > self.dim {
            Err(Error::ContextMismatch(format!(
                "multivector uses e{} in a dimension-{} algebra",
                u.max_index(),
                self.dim
            )))
        } else {
            Ok(())
        }
    }
}

/// `Q(x) = xᵀ g x`; the antisymmetric part never contributes.
pub fn quadratic(ctx: &FormContext, x: &[Scalar]) -> Result<Scalar> {
    if x.len() != ctx.dim {
        return Err(Error::Shape(format!(
            "vector has {} entries, expected {}",
            x.len(),
            ctx.dim
        )));
    }
    Ok(ctx.pairing(FormKind::G, x, x))
}

/// `(p, q, r)` of the symmetric part via exact congruence diagonalization.
pub fn signature(ctx: &FormContext) -> Signature {
    signature_of(ctx.g())
}

pub fn signature_of(sym: &Matrix) -> Signature {
    let mut s = sym.clone();
    let (mut p, mut q) = (0, 0);
    while !s.is_empty() {
        let n = s.len();
        let pivot = match (0..n).find(|&i| !s[i][i].is_zero()) {
            Some(i) => i,
            None => {
                // All diagonal entries vanish: use a hyperbolic pair e_i → e_i + e_j,
                // whose new diagonal entry is 2 s_ij.
                let Some((i, j)) = (0..n)
                    .flat_map(|i| (0..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !s[i][j].is_zero())
                else {
                    break;
                };
                for k in 0..n {
                    let v = s[j][k].clone();
                    s[i][k] += &v;
                }
                for k in 0..n {
                    let v = s[k][j].clone();
                    s[k][i] += &v;
                }
                i
            }
        };
        let d = s[pivot][pivot].clone();
        if d.re().is_positive() {
            p += 1;
        } else {
            q += 1;
        }
        let inv = d.inv().expect("nonzero pivot");
        let rest: Vec<usize> = (0..n).filter(|&k| k != pivot).collect();
        s = rest
            .iter()
            .map(|&i| {
                rest.iter()
                    .map(|&j| &s[i][j] - &(&(&s[i][pivot] * &s[pivot][j]) * &inv))
                    .collect()
            })
            .collect();
    }
    let r = sym.len() - p - q;
    Signature { p, q, r }
}

/// The pairs `(k, l)`, `k < l`, enumerating grade-2 blades.
fn bivector_pairs(n: usize) -> Vec<(usize, usize)> {
    (1..=n)
        .flat_map(|k| (k + 1..=n).map(move |l| (k, l)))
        .collect()
}

fn bivector_blade(k: usize, l: usize) -> Blade {
    Blade(Blade::basis(k).0 | Blade::basis(l).0)
}

/// `F ⌋_g (e_i ∧ e_j)` for all `i < j`, in [`bivector_pairs`] order.
pub fn antisym_from_bivector(ctx: &FormContext, f: &Multivector) -> Matrix {
    let n = ctx.dim;
    let mut a = linalg::zeros(n, n);
    for (i, j) in bivector_pairs(n) {
        let v = contract_left(f, &Multivector::blade(bivector_blade(i, j)), ctx.g()).scalar_part();
        a[j - 1][i - 1] = -&v;
        a[i - 1][j - 1] = v;
    }
    a
}

/// Solves `F ⌋_g (e_i ∧ e_j) = A_ij` for a bivector `F`. Requires `g` nondegenerate.
pub fn bivector_from_antisym(ctx: &FormContext) -> Result<Multivector> {
    if !signature(ctx).is_nondegenerate() {
        return Err(Error::NoWickBivector);
    }
    let pairs = bivector_pairs(ctx.dim);
    if pairs.is_empty() {
        return Ok(Multivector::zero());
    }
    // column (k,l): the values of (e_k ∧ e_l) ⌋_g (e_i ∧ e_j) over rows (i,j)
    let columns: Vec<Vec<Scalar>> = pairs
        .iter()
        .map(|&(k, l)| {
            let f = Multivector::blade(bivector_blade(k, l));
            pairs
                .iter()
                .map(|&(i, j)| {
                    contract_left(&f, &Multivector::blade(bivector_blade(i, j)), ctx.g())
                        .scalar_part()
                })
                .collect()
        })
        .collect();
    let system = linalg::transpose(&columns);
    let rhs: Vec<Scalar> = pairs
        .iter()
        .map(|&(i, j)| ctx.a()[i - 1][j - 1].clone())
        .collect();
    let (x, _) = linalg::solve(&system, &rhs).ok_or(Error::NoWickBivector)?;
    let f = Multivector::from_terms(
        pairs
            .iter()
            .zip(x)
            .map(|(&(k, l), c)| (bivector_blade(k, l), c)),
    );
    debug_assert_eq!(&antisym_from_bivector(ctx, &f), ctx.a());
    if &antisym_from_bivector(ctx, &f) != ctx.a() {
        return Err(Error::NoWickBivector);
    }
    Ok(f)
}

/// Congruence `Pᵀ M P`.
pub fn congruent(m: &Matrix, p: &Matrix) -> Matrix {
    linalg::matmul(&linalg::matmul(&linalg::transpose(p), m), p)
}

/// Identity check helper used by tests and reports.
pub fn is_identity(m: &Matrix) -> bool {
    m.iter().enumerate().all(|(i, row)| {
        row.iter()
            .enumerate()
            .all(|(j, s)| if i == j { s.is_one() } else { s.is_zero() })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Scalar {
        s.parse().unwrap()
    }

    fn mat(rows: &[&[&str]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|x| q(x)).collect()).collect()
    }

    #[test]
    fn split_example_two_form() {
        let ctx = split_form(mat(&[&["1", "1"], &["0", "-1"]]), Ring::Rational).unwrap();
        assert_eq!(ctx.g(), &mat(&[&["1", "1/2"], &["1/2", "-1"]]));
        assert_eq!(ctx.a(), &mat(&[&["0", "1/2"], &["-1/2", "0"]]));
    }

    #[test]
    fn split_degenerate_cases() {
        let sym = split_form(mat(&[&["2", "3"], &["3", "5"]]), Ring::Rational).unwrap();
        assert!(!sym.has_antisymmetric_part());
        let anti = split_form(mat(&[&["0", "1"], &["-1", "0"]]), Ring::Rational).unwrap();
        assert_eq!(anti.g(), &linalg::zeros(2, 2));
        assert_eq!(anti.a(), anti.b());
    }

    #[test]
    fn split_rejects_bad_shapes() {
        assert!(matches!(
            split_form(vec![vec![q("1"), q("2")]], Ring::Rational),
            Err(Error::Shape(_))
        ));
        let big = linalg::identity(13);
        assert!(matches!(
            split_form(big, Ring::Rational),
            Err(Error::DimensionTooLarge { .. })
        ));
        assert!(matches!(
            split_form(vec![vec![Scalar::i()]], Ring::Rational),
            Err(Error::RingMismatch(_))
        ));
    }

    #[test]
    fn quadratic_examples() {
        let ctx = FormContext::diagonal_pq(1, 1).unwrap();
        assert!(quadratic(&ctx, &[q("1"), q("1")]).unwrap().is_zero());
        let ex2 = split_form(mat(&[&["1", "1"], &["0", "-1"]]), Ring::Rational).unwrap();
        assert_eq!(quadratic(&ex2, &[q("0"), q("1")]).unwrap(), q("-1"));
        assert!(quadratic(&ex2, &[q("1")]).is_err());
    }

    #[test]
    fn signature_examples() {
        let ctx = FormContext::diagonal_pq(2, 2).unwrap();
        assert_eq!(signature(&ctx), Signature { p: 2, q: 2, r: 0 });
        let hyp = mat(&[&["0", "1/2"], &["1/2", "0"]]);
        assert_eq!(signature_of(&hyp), Signature { p: 1, q: 1, r: 0 });
        assert_eq!(signature_of(&linalg::zeros(2, 2)), Signature { p: 0, q: 0, r: 2 });
    }

    #[test]
    fn bivector_sign_convention() {
        // Brute force: F = c e1∧e2 with c = ±α; only one candidate reproduces A_12 = α.
        let alpha = q("3/7");
        let g = linalg::identity(2);
        let mut a = linalg::zeros(2, 2);
        a[0][1] = alpha.clone();
        a[1][0] = -&alpha;
        let ctx = FormContext::from_parts(&g, &a, Ring::Rational).unwrap();
        let e12 = Multivector::blade(Blade(0b11));
        let candidates = [e12.scale(&alpha), e12.scale(&-&alpha)];
        let good: Vec<_> = candidates
            .iter()
            .filter(|f| antisym_from_bivector(&ctx, f) == a)
            .collect();
        assert_eq!(good.len(), 1);
        assert_eq!(bivector_from_antisym(&ctx).unwrap(), *good[0]);
        assert_eq!(*good[0], e12.scale(&-&alpha));
    }

    #[test]
    fn bivector_zero_and_signature_case() {
        let ctx = FormContext::diagonal_pq(2, 2).unwrap();
        assert!(bivector_from_antisym(&ctx).unwrap().is_zero());

        let mut b = linalg::zeros(4, 4);
        for (i, s) in [1, -1, 1, -1].iter().enumerate() {
            b[i][i] = Scalar::from_int(*s);
        }
        b[0][2] = q("1");
        b[2][0] = q("-1");
        let ctx = split_form(b, Ring::Rational).unwrap();
        let f = bivector_from_antisym(&ctx).unwrap();
        assert_eq!(f.len(), 1);
        let e13 = Blade(0b101);
        // oracle: (e1∧e3) ⌋_g (e1∧e3) = −g11 g33 = −1, so F_13 = −A_13
        assert_eq!(f.coeff(e13), q("-1"));
        assert_eq!(&antisym_from_bivector(&ctx, &f), ctx.a());
    }

    #[test]
    fn degenerate_g_has_no_bivector() {
        let ctx = split_form(mat(&[&["0", "1"], &["-1", "0"]]), Ring::Rational).unwrap();
        assert_eq!(bivector_from_antisym(&ctx), Err(Error::NoWickBivector));
    }
}
