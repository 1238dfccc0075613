//! The Grassmann layer: bit-set blades, sparse multivectors, the wedge product,
//! graded involutions, and left contractions driven by an arbitrary bilinear form.
//!
//! Contractions follow the Chevalley rules
//!
//! * `x ⌋ y = M(x, y)` for vectors,
//! * `x ⌋ (u ∧ v) = (x ⌋ u) ∧ v + û ∧ (x ⌋ v)`,
//! * `(u ∧ v) ⌋ w = u ⌋ (v ⌋ w)`,
//!
//! with scalars on the left acting by multiplication (`α ⌋ u = α u`).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num::traits::{One, Zero};

use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Hard ceiling imposed by the `u32` bit-set encoding.
pub const BLADE_BITS: usize = 31;

/// A wedge monomial `e_{i1} ∧ … ∧ e_{ik}` with ascending indices, stored as a
/// bit set (bit `i - 1` for `e_i`). The empty set is the unit.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Blade(pub u32);

impl Blade {
    pub const UNIT: Blade = Blade(0);

    /// `e_i` for a 1-based index.
    pub fn basis(i: usize) -> Blade {
        debug_assert!((1..=BLADE_BITS).contains(&i));
        Blade(1 << (i - 1))
    }

    /// Builds a blade from 1-based indices, returning the sign of the sort
    /// permutation, or `None` when an index repeats.
    pub fn from_indices(indices: &[usize]) -> Option<(i8, Blade)> {
        let mut bits = 0u32;
        let mut sign = 1i8;
        for &i in indices {
            let b = Blade::basis(i).0;
            if bits & b != 0 {
                return None;
            }
            // every already-present higher index is one transposition
            if (bits & !(b | (b - 1))).count_ones() % 2 == 1 {
                sign = -sign;
            }
            bits |= b;
        }
        Some((sign, Blade(bits)))
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << (i - 1)) != 0
    }

    /// Ascending 1-based indices.
    pub fn indices(self) -> Vec<usize> {
        (0..32).filter(|b| self.0 & (1 << b) != 0).map(|b| b + 1).collect()
    }

    /// Highest index present, 0 for the unit.
    pub fn max_index(self) -> usize {
        32 - self.0.leading_zeros() as usize
    }

    pub fn is_even(self) -> bool {
        self.grade().is_multiple_of(2)
    }
}

impl fmt::Debug for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("Id");
        }
        let parts: Vec<String> = self.indices().iter().map(|i| format!("e{i}")).collect();
        f.write_str(&parts.join("^"))
    }
}

/// Sign of `a ∧ b` relative to the ascending merge, assuming disjoint blades:
/// the parity of pairs `(i ∈ a, j ∈ b)` with `j < i`.
#[inline]
pub fn wedge_sign(a: Blade, b: Blade) -> i8 {
    let mut a = a.0 >> 1;
    let mut swaps = 0u32;
    while a != 0 {
        swaps += (a & b.0).count_ones();
        a >>= 1;
    }
    if swaps.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Finite sparse map blade → coefficient. Zero coefficients are never stored,
/// so structural equality is exact algebraic equality.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct Multivector {
    terms: BTreeMap<Blade, Scalar>,
}

impl Multivector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(Scalar::one())
    }

    pub fn scalar(s: Scalar) -> Self {
        Self::term(Blade::UNIT, s)
    }

    pub fn term(blade: Blade, s: Scalar) -> Self {
        let mut m = Self::zero();
        m.add_term(blade, s);
        m
    }

    pub fn blade(blade: Blade) -> Self {
        Self::term(blade, Scalar::one())
    }

    /// The generator `e_i` (1-based).
    pub fn basis(i: usize) -> Self {
        Self::blade(Blade::basis(i))
    }

    /// `Σ coeffs[k] e_{k+1}`.
    pub fn vector(coeffs: &[Scalar]) -> Self {
        let mut m = Self::zero();
        for (k, c) in coeffs.iter().enumerate() {
            m.add_term(Blade::basis(k + 1), c.clone());
        }
        m
    }

    pub fn from_terms<I: IntoIterator<Item = (Blade, Scalar)>>(terms: I) -> Self {
        let mut m = Self::zero();
        for (b, s) in terms {
            m.add_term(b, s);
        }
        m
    }

    pub fn add_term(&mut self, blade: Blade, s: Scalar) {
        if s.is_zero() {
            return;
        }
        match self.terms.entry(blade) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(s);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &s;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn add_signed(&mut self, blade: Blade, sign: i8, s: &Scalar) {
        if sign > 0 {
            self.add_term(blade, s.clone());
        } else {
            self.add_term(blade, -s);
        }
    }

    pub fn add_scaled(&mut self, other: &Multivector, factor: &Scalar) {
        if factor.is_zero() {
            return;
        }
        for (b, s) in &other.terms {
            self.add_term(*b, s * factor);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending blade bit-pattern order.
    pub fn terms(&self) -> impl Iterator<Item = (Blade, &Scalar)> + '_ {
        self.terms.iter().map(|(b, s)| (*b, s))
    }

    pub fn coeff(&self, blade: Blade) -> Scalar {
        self.terms.get(&blade).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn scalar_part(&self) -> Scalar {
        self.coeff(Blade::UNIT)
    }

    /// Largest generator index used by any term.
    pub fn max_index(&self) -> usize {
        self.terms.keys().map(|b| b.max_index()).max().unwrap_or(0)
    }

    pub fn scale(&self, s: &Scalar) -> Multivector {
        if s.is_zero() {
            return Self::zero();
        }
        Multivector {
            terms: self.terms.iter().map(|(b, c)| (*b, c * s)).collect(),
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> Multivector {
        Self::from_terms(self.terms.iter().map(|(b, c)| (*b, f(c))))
    }

    pub fn grade_part(&self, k: usize) -> Multivector {
        self.filter(|b| b.grade() == k)
    }

    pub fn even_part(&self) -> Multivector {
        self.filter(Blade::is_even)
    }

    pub fn odd_part(&self) -> Multivector {
        self.filter(|b| !b.is_even())
    }

    pub fn filter(&self, keep: impl Fn(Blade) -> bool) -> Multivector {
        Multivector {
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| keep(**b))
                .map(|(b, s)| (*b, s.clone()))
                .collect(),
        }
    }

    /// Whether all terms have grade `k`.
    pub fn is_homogeneous(&self, k: usize) -> bool {
        self.terms.keys().all(|b| b.grade() == k)
    }

    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|b| b.is_even())
    }

    pub fn is_odd(&self) -> bool {
        self.terms.keys().all(|b| !b.is_even())
    }

    /// Coefficient vector over all `2^dim` blades, indexed by bit pattern.
    pub fn to_dense(&self, dim: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); 1 << dim];
        for (b, s) in &self.terms {
            v[b.0 as usize] = s.clone();
        }
        v
    }

    pub fn from_dense(v: &[Scalar]) -> Multivector {
        Self::from_terms(v.iter().enumerate().map(|(k, s)| (Blade(k as u32), s.clone())))
    }

    /// Exterior product.
    pub fn wedge(&self, other: &Multivector) -> Multivector {
        let mut out = Multivector::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if a.0 & b.0 != 0 {
                    continue;
                }
                let sign = wedge_sign(*a, *b);
                out.add_signed(Blade(a.0 | b.0), sign, &(x * y));
            }
        }
        out
    }

    /// `û`: grade-k part multiplied by `(-1)^k`.
    pub fn grade_involution(&self) -> Multivector {
        Multivector {
            terms: self
                .terms
                .iter()
                .map(|(b, s)| (*b, if b.is_even() { s.clone() } else { -s }))
                .collect(),
        }
    }

    /// Wedge reversion: grade-k part multiplied by `(-1)^{k(k-1)/2}`.
    pub fn reversion(&self) -> Multivector {
        Multivector {
            terms: self
                .terms
                .iter()
                .map(|(b, s)| {
                    let k = b.grade();
                    (*b, if (k * k.saturating_sub(1) / 2) % 2 == 0 { s.clone() } else { -s })
                })
                .collect(),
        }
    }

    /// Vector coefficients `(x_1, …, x_dim)`; higher-grade terms are ignored.
    pub fn vector_coeffs(&self, dim: usize) -> Vec<Scalar> {
        (1..=dim).map(|i| self.coeff(Blade::basis(i))).collect()
    }
}

/// `e_j ⌋_M u` for a single generator: one Leibniz pass with alternating signs.
pub fn contract_basis(j: usize, u: &Multivector, form: &Matrix) -> Multivector {
    let row = &form[j - 1];
    let mut out = Multivector::zero();
    for (blade, s) in u.terms() {
        let mut rest = blade.0;
        let mut position = 0u32;
        while rest != 0 {
            let bit = rest.trailing_zeros();
            rest &= rest - 1;
            let m = &row[bit as usize];
            if !m.is_zero() {
                let sign = if position.is_multiple_of(2) { 1 } else { -1 };
                out.add_signed(Blade(blade.0 & !(1 << bit)), sign, &(m * s));
            }
            position += 1;
        }
    }
    out
}

/// `x ⌋_M u` for a general left argument, via `(u ∧ v) ⌋ w = u ⌋ (v ⌋ w)`:
/// a blade `e_{i1} ∧ … ∧ e_{ik}` contracts innermost with `e_{ik}` first.
pub fn contract_left(x: &Multivector, u: &Multivector, form: &Matrix) -> Multivector {
    let mut out = Multivector::zero();
    for (blade, c) in x.terms() {
        let mut acc = u.clone();
        for i in blade.indices().into_iter().rev() {
            acc = contract_basis(i, &acc, form);
            if acc.is_zero() {
                break;
            }
        }
        out.add_scaled(&acc, c);
    }
    out
}

impl Add for &Multivector {
    type Output = Multivector;
    fn add(self, rhs: &Multivector) -> Multivector {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::one());
        out
    }
}

impl Sub for &Multivector {
    type Output = Multivector;
    fn sub(self, rhs: &Multivector) -> Multivector {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Scalar::one());
        out
    }
}

impl Add for Multivector {
    type Output = Multivector;
    fn add(self, rhs: Multivector) -> Multivector {
        &self + &rhs
    }
}

impl Sub for Multivector {
    type Output = Multivector;
    fn sub(self, rhs: Multivector) -> Multivector {
        &self - &rhs
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.map_coeffs(|s| -s)
    }
}

impl Neg for Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        -&self
    }
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::format_multivector(self))
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::format_multivector(self))
    }
}
