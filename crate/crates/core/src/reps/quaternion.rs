//! Exact identification of a 4-dimensional noncommutative Peirce corner with a
//! quaternion algebra `(α, β)_ℚ`, and the Legendre test deciding whether it splits.

use num::{BigRational, Integer, Signed, ToPrimitive, Zero};

use crate::clifford::CliffordAlgebra;
use crate::error::Result;
use crate::exterior::Multivector;
use crate::reps::ideal::{peirce_corner, span_basis};
use crate::scalar::Scalar;

/// `f·Cl·f = ⟨f, i, j, i·j⟩` with `i² = α f`, `j² = β f`, `i·j = −j·i`.
#[derive(Clone, Debug)]
pub struct QuaternionCorner {
    pub i: Multivector,
    pub j: Multivector,
    pub alpha: BigRational,
    pub beta: BigRational,
    /// `Some(true)` iff `αx² + βy² = z²` has a nonzero rational solution.
    pub split_over_q: Option<bool>,
    pub split_over_r: bool,
}

#[derive(Clone, Debug)]
pub enum CornerClass {
    Quaternion(QuaternionCorner),
    /// The corner contains a nonzero nilpotent, so it is a full matrix algebra.
    HasNilpotent(Multivector),
    Commutative,
    Undetermined(String),
}

/// Coefficients `(t, n)` with `x² = t·x − n·f`, when `x, f` are independent and such a relation exists.
fn quadratic_relation(
    cl: &CliffordAlgebra,
    f: &Multivector,
    x: &Multivector,
) -> Option<(Scalar, Scalar)> {
    let dim = cl.dim();
    if span_basis(&[f.clone(), x.clone()], dim).len() < 2 {
        return None;
    }
    let x2 = cl.mul(x, x);
    let a: Vec<Vec<Scalar>> = {
        let (fx, xx) = (f.to_dense(dim), x.to_dense(dim));
        (0..fx.len()).map(|r| vec![xx[r].clone(), fx[r].clone()]).collect()
    };
    let (sol, _) = crate::linalg::solve(&a, &x2.to_dense(dim))?;
    Some((sol[0].clone(), -&sol[1]))
}

/// `Some(c)` when `u = c·f`.
fn multiple_of(f: &Multivector, u: &Multivector) -> Option<Scalar> {
    let (blade, s) = f.terms().next()?;
    let c = u.coeff(blade) * s.inv()?;
    (f.scale(&c) == *u).then_some(c)
}

fn rational(s: &Scalar) -> Option<BigRational> {
    s.is_real().then(|| s.re().clone())
}

pub fn classify_corner(cl: &CliffordAlgebra, f: &Multivector) -> Result<CornerClass> {
    let corner = peirce_corner(cl, f)?;
    let basis = &corner.basis;
    let commutative = basis
        .iter()
        .all(|x| basis.iter().all(|y| cl.commutator(x, y).is_zero()));
    if commutative {
        return Ok(CornerClass::Commutative);
    }
    if corner.dimension != 4 {
        return Ok(CornerClass::Undetermined(format!(
            "noncommutative corner of dimension {}",
            corner.dimension
        )));
    }
    let half = Scalar::frac(1, 2);
    let mut pure_i = None;
    for x in basis {
        let Some((t, _)) = quadratic_relation(cl, f, x) else {
            continue;
        };
        let y = x - &f.scale(&(&t * &half));
        let y2 = cl.mul(&y, &y);
        if y2.is_zero() {
            return Ok(CornerClass::HasNilpotent(y));
        }
        let Some(alpha) = multiple_of(f, &y2) else {
            continue;
        };
        pure_i = Some((y, alpha));
        break;
    }
    let Some((i, alpha)) = pure_i else {
        return Ok(CornerClass::Undetermined("no quadratic element found".into()));
    };
    for z in basis {
        let w = &cl.mul(&i, z) - &cl.mul(z, &i);
        if w.is_zero() {
            continue;
        }
        let w2 = cl.mul(&w, &w);
        if w2.is_zero() {
            return Ok(CornerClass::HasNilpotent(w));
        }
        let Some(beta) = multiple_of(f, &w2) else {
            continue;
        };
        let iw = cl.mul(&i, &w);
        let spans = span_basis(&[f.clone(), i.clone(), w.clone(), iw], cl.dim()).len() == 4;
        let (Some(a), Some(b)) = (rational(&alpha), rational(&beta)) else {
            return Ok(CornerClass::Undetermined("non-rational structure constants".into()));
        };
        if !spans {
            continue;
        }
        let split_over_r = a.is_positive() || b.is_positive();
        return Ok(CornerClass::Quaternion(QuaternionCorner {
            split_over_q: hilbert_split(&a, &b),
            split_over_r,
            i,
            j: w,
            alpha: a,
            beta: b,
        }));
    }
    Ok(CornerClass::Undetermined("no anticommuting partner found".into()))
}

/// Whether `αx² + βy² = z²` has a nontrivial rational solution (Legendre's theorem).
/// `None` when the integers involved are too large to factor by trial division.
pub fn hilbert_split(alpha: &BigRational, beta: &BigRational) -> Option<bool> {
    if alpha.is_zero() || beta.is_zero() {
        return Some(true);
    }
    legendre(square_class(alpha)?, square_class(beta)?, -1)
}

/// Squarefree integer in the square class of `p/q`, namely that of `p·q`.
fn square_class(x: &BigRational) -> Option<i64> {
    let p = squarefree(x.numer().to_i64()?)?;
    let q = squarefree(x.denom().to_i64()?)?;
    let g = p.gcd(&q);
    squarefree((p / g).checked_mul(q / g)?)
}

const FACTOR_LIMIT: i64 = 1 << 40;

fn squarefree(n: i64) -> Option<i64> {
    if n.unsigned_abs() > FACTOR_LIMIT as u64 {
        return None;
    }
    let sign = n.signum();
    let mut m = n.abs();
    let mut out = 1;
    let mut p = 2;
    while p * p <= m {
        let mut k = 0;
        while m % p == 0 {
            m /= p;
            k += 1;
        }
        if k % 2 == 1 {
            out *= p;
        }
        p += 1;
    }
    Some(sign * out * m)
}

fn prime_factors(n: i64) -> Vec<i64> {
    let mut m = n.abs();
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            out.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

fn mod_pow(base: i64, mut exp: i64, m: i64) -> i64 {
    let mut acc: i128 = 1;
    let mut b = base.rem_euclid(m) as i128;
    let m128 = m as i128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as i64
}

/// `x` is a square modulo the squarefree `m`.
fn is_square_mod(x: i64, m: i64) -> bool {
    prime_factors(m).into_iter().all(|p| {
        let r = x.rem_euclid(p);
        p == 2 || r == 0 || mod_pow(r, (p - 1) / 2, p) == 1
    })
}

/// Nontrivial integer zero of `ax² + by² + cz²`.
fn legendre(a: i64, b: i64, c: i64) -> Option<bool> {
    let (mut a, mut b, mut c) = (squarefree(a)?, squarefree(b)?, squarefree(c)?);
    loop {
        let mut changed = false;
        for _ in 0..3 {
            let d = a.gcd(&b);
            if d > 1 {
                a /= d;
                b /= d;
                c = squarefree(c.checked_mul(d)?)?;
                changed = true;
            }
            (a, b, c) = (b, c, a);
        }
        if !changed {
            break;
        }
    }
    if (a > 0) == (b > 0) && (b > 0) == (c > 0) {
        return Some(false);
    }
    Some(
        is_square_mod(-(b * c), a.abs())
            && is_square_mod(-(c * a), b.abs())
            && is_square_mod(-(a * b), c.abs()),
    )
}
