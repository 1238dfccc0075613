use crate::clifford::CliffordAlgebra;
use crate::error::{Error, Result};
use crate::exterior::{Blade, Multivector};
use crate::linalg;

/// A reduced basis of the span of `elements` (rows of the RREF of their coordinates).
pub fn span_basis(elements: &[Multivector], dim: usize) -> Vec<Multivector> {
    let mut rows: linalg::Matrix = elements.iter().map(|e| e.to_dense(dim)).collect();
    let rank = linalg::rref(&mut rows).len();
    rows.truncate(rank);
    rows.iter().map(|r| Multivector::from_dense(r)).collect()
}

pub fn is_idempotent(cl: &CliffordAlgebra, f: &Multivector) -> bool {
    cl.mul(f, f) == *f
}

/// `Cl · f` with an exact basis.
#[derive(Clone, Debug)]
pub struct IdealBasis {
    pub idempotent: Multivector,
    pub basis: Vec<Multivector>,
    pub dimension: usize,
}

pub fn left_ideal(cl: &CliffordAlgebra, f: &Multivector) -> Result<IdealBasis> {
    cl.ctx().check_fits(f)?;
    if !is_idempotent(cl, f) {
        return Err(Error::NotIdempotent);
    }
    let products: Vec<Multivector> = (0..cl.size())
        .map(|b| cl.mul(&Multivector::blade(Blade(b as u32)), f))
        .collect();
    let basis = span_basis(&products, cl.dim());
    Ok(IdealBasis {
        idempotent: f.clone(),
        dimension: basis.len(),
        basis,
    })
}

/// `f · Cl · f`, a unital subalgebra with unit `f`.
#[derive(Clone, Debug)]
pub struct CornerBasis {
    pub idempotent: Multivector,
    pub basis: Vec<Multivector>,
    pub dimension: usize,
}

impl CornerBasis {
    /// Dimension one certifies that `f` admits no further orthogonal splitting.
    pub fn is_primitive(&self) -> bool {
        self.dimension == 1
    }
}

pub fn peirce_corner(cl: &CliffordAlgebra, f: &Multivector) -> Result<CornerBasis> {
    cl.ctx().check_fits(f)?;
    if !is_idempotent(cl, f) {
        return Err(Error::NotIdempotent);
    }
    let elements: Vec<Multivector> = (0..cl.size())
        .map(|b| {
            let left = cl.mul(f, &Multivector::blade(Blade(b as u32)));
            cl.mul(&left, f)
        })
        .collect();
    let basis = span_basis(&elements, cl.dim());
    Ok(CornerBasis {
        idempotent: f.clone(),
        dimension: basis.len(),
        basis,
    })
}
