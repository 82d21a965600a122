//! Solvability of generalized Sylvester systems: rank criteria on one side,
//! an exact linearized solver on the other.

mod check;
mod instance;
mod kinds;
mod linear;

pub use check::{
    check, check_classical_triple, check_hermitian, check_three_unknown, check_two_unknown, SolvabilityReport,
};
pub use instance::{SystemInstance, UnknownShapes};
pub use kinds::{EquationSpec, SystemKind, TermSpec};
pub use linear::{cross_check, solve_linearized, AgreementRecord, Solution};
