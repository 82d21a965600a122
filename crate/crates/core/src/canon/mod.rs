//! Canonical form of a matrix quaternity and of its dual array.

mod array;
mod decompose;
mod forms;
mod invariants;

pub use array::{DualArray, Quaternity};
pub use decompose::{decompose_dual, decompose_quaternity, DecompositionCertificate, DualCertificate};
pub use forms::{build_canonical_dual, build_canonical_quaternity, CanonicalDual, CanonicalQuaternity};
pub use invariants::{
    dual_invariants, duality_transport, quaternity_invariants, verify_consistency, ConsistencyReport, DualInvariants,
    IdentityCheck, QuaternityInvariants, QuaternityRanks,
};
