//! Quadrature, finite differences, moments, Schrödinger residuals and the
//! natural-variable ODE.

pub mod diff;
pub mod moments;
pub mod natural;
pub mod quad;
pub mod residual;
pub mod roots;

use thiserror::Error;

use crate::expr::EvalError;

pub use moments::{commutator_action, moments, MomentSet};
pub use natural::{natural_variable_solve, natural_variable_solve_with, NaturalSolution, NaturalVariableProblem, SmoothnessDiagnostic};
pub use quad::{adaptive_quad, adaptive_quad_with, QuadConfig, QuadratureResult};
pub use residual::{schrodinger_residual, schrodinger_residual_with, ResidualConfig, SecondDerivative};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericsError {
    #[error("quadrature did not converge for {what}: estimate {:e} after {} panels", .result.error_estimate, .result.subdivisions)]
    Quadrature { what: String, result: QuadratureResult },
    #[error("no turning point with V(x) = {energy} found on [0, {searched_to:e}]")]
    TurningPointNotFound { energy: f64, searched_to: f64 },
    #[error("integrand negative at x = {x}: X = {value} exceeds X_max = {x_max}")]
    NegativeIntegrand { x: f64, value: f64, x_max: f64 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
}
