//! Exact computer algebra for Clifford algebras `Cl(B, V)` of an arbitrary
//! bilinear form `B = g + A`.
//!
//! The Clifford product is realized on the Grassmann algebra `∧V` by the
//! operators `L_x = x ⌋_B · + x ∧ ·`. On top of it sit the Wick isomorphism
//! `Cl(B) ≅ Cl(g)`, the `A`-dependent multivector gradings, the (1,1)
//! periodicity check with connecting-term detection, and representation
//! probes (idempotents, left ideals, Peirce corners, index doubling).
//!
//! All arithmetic is exact over ℚ or ℚ(i).

pub mod clifford;
pub mod decomp;
pub mod error;
pub mod exterior;
pub mod forms;
pub mod linalg;
pub mod reps;
pub mod scalar;
pub mod text;
pub mod wick;

pub use clifford::CliffordAlgebra;
pub use error::{Error, Result};
pub use exterior::{Blade, Multivector};
pub use forms::{split_form, FormContext, FormKind, Signature};
pub use scalar::{Ring, Scalar};
