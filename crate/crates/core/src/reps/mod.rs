//! Idempotents, spinor ideals, Peirce corners, and the CAR algebra obtained by index doubling.

pub mod car;
pub mod ideal;
pub mod probe;
pub mod quaternion;
pub mod split;

pub use ideal::{is_idempotent, left_ideal, peirce_corner, span_basis, CornerBasis, IdealBasis};
pub use split::{
    corner_split_search, primitive_decomposition, PrimitiveDecomposition, SplitConfig,
    SplitOutcome, SplitReport,
};
pub use car::{build_car, solve_u2_generators, vacuum_functional, CarContext, U2Outcome, U2Solution};
pub use quaternion::{classify_corner, CornerClass, QuaternionCorner};
pub use probe::{block_form_probe, parametric_idempotent, ProbeReport, REFERENCE_IDEAL_DIMENSION};
