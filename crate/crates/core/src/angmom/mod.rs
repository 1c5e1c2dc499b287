//! Deformed angular momentum operators and the identity suite.

pub mod builders;
pub mod closed;
pub mod identities;
pub mod spec;

use thiserror::Error;

use crate::opcalc::ParseError;

pub use builders::{
    build_angular, build_ell2, build_ladder, build_lambda, build_momentum, build_position,
    build_standard_angular, levi, sum_of_squares, Ladder,
};
pub use closed::{
    ell_dot_s, ell_s_dot_p, h_cross_form, h_definitional, h_index_form, h_left_closed,
    h_right_closed, LeftReading, Matrix,
};
pub use identities::{
    run_identity, run_suite, Check, IdentityId, IdentityReport, Status, IDENTITY_IDS,
};
pub use spec::{DeformationSpec, Flavor};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AngmomError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("expected three comma-separated components, got {0}")]
    Components(usize),
    #[error("component is not a polynomial function: {0}")]
    NotPolynomial(String),
    #[error("s component must have real coefficients: {0}")]
    NotReal(String),
    #[error("w component must have complex coefficients: {0}")]
    NotComplex(String),
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("incompatible spec: {0}")]
    Incompatible(String),
}
