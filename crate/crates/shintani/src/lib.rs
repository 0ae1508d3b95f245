//! Classes of integral binary cubic forms, the lattice shapes of the attached
//! cubic rings, real analytic Eisenstein series evaluated at those shapes, and
//! numerical checks of the residues and integral identities of the
//! Eisenstein-twisted Shintani zeta functions.

pub mod class_enumeration;
pub mod cubic_forms;
pub mod eisenstein;
pub mod lemma_verification;
pub mod shapes;
pub mod special_functions;
pub mod spectral_zeta;

pub use class_enumeration::FormClass;
pub use cubic_forms::{CubicForm, GroupElement, IntMatrix, Iwasawa, QuadForm, RealCubicForm, Sign};
pub use shapes::ShapePoint;
pub use special_functions::SpecFunResult;

use thiserror::Error as ThisError;

#[derive(Debug, ThisError)]
pub enum Error {
    #[error("form {0} is singular (discriminant 0)")]
    Singular(CubicForm),
    #[error("form {0} is reducible")]
    Reducible(CubicForm),
    #[error("form {0} is irreducible")]
    Irreducible(CubicForm),
    #[error("form {0} is not singular")]
    Nonsingular(String),
    #[error("input {0} is at a pole")]
    Pole(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("{0} exceeds the oracle guard")]
    Guard(String),
}

pub type Result<T> = std::result::Result<T, Error>;
