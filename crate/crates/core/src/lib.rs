//! Exact computations with monomial ideals: minimal generators, products,
//! colons, integral closure through Newton polyhedra, and normality checks
//! with certificates that can be re-validated independently.
//!
//! Nothing here depends on the coefficient field: integral closure and
//! normality of monomial ideals are properties of exponent sets alone.

pub mod error;
pub mod exponent;
pub mod ideal;
mod lp;
pub mod newton;
pub mod normality;
pub mod quasinormal;
mod staircase;
pub mod two_exponent;

pub use error::{Degenerate, Error, Result};
pub use exponent::ExponentVector;
pub use ideal::MonomialIdeal;
pub use newton::{
    closure, closure_with_limit, dependence_witness, first_closure_gap, np_member, pure_power_member,
    validate_certificate, Decision, DependenceWitness, MembershipVerdict,
};
pub use normality::{
    is_integrally_closed, is_normal, pure_power_normality, socle_criterion_check, NormalityOptions, NormalityReport,
    Shortcut, Subject, Verdict,
};
pub use quasinormal::{quasinormality_check, Quasinormality, QuasinormalityVerdict};
pub use staircase::CELL_BUDGET;
pub use two_exponent::{TwoExponentSpec, VerificationReport};
