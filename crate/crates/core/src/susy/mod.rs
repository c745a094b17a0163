//! Supersymmetric systems built from a superpotential.
//!
//! For `W(z)` with derivatives `W'`, `W''`:
//!
//! - partner potential `V = W'^2 - W''`, so `H = -d^2/dz^2 + V = A^dagger A`
//!   with `A = d/dz + W'`;
//! - zero-energy ground state `psi_0 = exp(-W) / N_0`;
//! - coherent states `A psi_alpha = alpha psi_alpha`, i.e. `exp(alpha z - W) / N_alpha`;
//! - squeezed states solving `(X + i B P) psi = C psi` with `X = sqrt(2) W'` and
//!   `P = -i sqrt(2) d/dz`, i.e. `exp(C z / (sqrt(2) B) - W / B)`.

mod catalog;
mod states;
mod superpotential;
mod wavefunction;

use thiserror::Error;

use crate::airy::AiryError;
use crate::expr::{EvalError, ParseError};
use crate::numerics::QuadratureResult;

pub use catalog::{catalog, catalog_constants, catalog_entry, catalog_names, catalog_source, CATALOG_SIZE};
pub use states::{
    apply_annihilation, coherent_state, ground_state, potential_from_w, squeezed_state, SqueezeParams,
};
pub use superpotential::{GrowthClass, Superpotential, Symmetry};
pub use wavefunction::{Domain, WaveFunction, TAIL_PROBE_LENGTHS};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SusyError {
    #[error("{label} is not normalizable: {reason}")]
    NonNormalizable { label: String, reason: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unknown system `{0}` (known: volcano, plugged-volcano, double-well, susy-sho, linear-airy)")]
    UnknownSystem(String),
    #[error("quadrature did not converge for {what}: estimate {:e} after {} panels", .result.error_estimate, .result.subdivisions)]
    Quadrature { what: String, result: QuadratureResult },
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Airy(#[from] AiryError),
}
