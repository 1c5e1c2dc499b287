//! Numerical spherical machinery.
//!
//! Associated Legendre functions and Gauss–Legendre quadrature in `u = cos θ`,
//! the angular operators `α̂` and `β̂` on coefficient vectors, the first-order
//! perturbation solver, and exact pointwise evaluation of Cartesian operators
//! on separable states through truncated Taylor jets.

mod basis;
mod jet;
mod legendre;
mod quadrature;
mod series;
mod state;

pub use basis::{
    alpha_apply, beta_apply, ell2_separable, solve_perturbation, solve_perturbation_with_nodes,
    LegendreBasis, PerturbationSolution,
};
pub use jet::Jet;
pub use legendre::{assoc_legendre, derivatives_in_u, legendre_derivative_table, norm_sqr, theta_derivatives};
pub use quadrature::GaussLegendre;
pub use state::{
    apply_operator_numeric, ell2_formula_value, eval_state, SeparableState, SphericalPoint,
};

use crate::qalg::QalgError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("degree {lambda} is below |m| = {}", m.abs())]
    Degree { lambda: i32, m: i32 },
    #[error("maximum degree {lmax} is too small, need at least {required}")]
    MaxDegree { lmax: i32, required: i32 },
    #[error("result needs degrees up to {required}, beyond the basis")]
    BasisOverflow { required: i32 },
    #[error("result is not in the span of P^{m} (tail {tail:.3e})")]
    NotRepresentable { m: i32, tail: f64 },
    #[error("projected residual {residual:.3e} exceeds tolerance, raise lmax (now {lmax}) or the node count (now {nodes})")]
    Residual { residual: f64, lmax: i32, nodes: usize },
    #[error("coefficient vector has length {got}, basis has {expected}")]
    Length { got: usize, expected: usize },
    #[error("point (r={r}, theta={theta}) is a coordinate singularity")]
    Singular { r: f64, theta: f64 },
    #[error("state is not normalizable: {0}")]
    NotNormalizable(String),
    #[error(transparent)]
    Symbol(#[from] QalgError),
}
