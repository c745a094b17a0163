//! Supersymmetric (factorized) quantum mechanics from a superpotential `W(z)`.
//!
//! Given `W`, the partner potential is `V = W'^2 - W''`, the Hamiltonian factorizes
//! as `H = -d^2/dz^2 + V = A^dagger A` with `A = d/dz + W'`, and the zero-energy
//! ground state is `exp(-W)`. Eigenstates of `A` (`exp(alpha z - W)`) are the
//! ladder-operator coherent states, and the minimum-uncertainty squeezed family
//! follows from `X = sqrt(2) W'`, `P = -i sqrt(2) d/dz`.
//!
//! Modules:
//! - [`expr`]: expression parser, evaluator and exact symbolic derivative.
//! - [`airy`]: `Ai`, `Ai'`, and the spectrum of the symmetric linear potential.
//! - [`susy`]: superpotentials, wave functions, coherent/squeezed states, catalog.
//! - [`numerics`]: quadrature, finite differences, moments, residuals, and the
//!   natural-classical-variable integrator.

pub mod airy;
pub mod expr;
pub mod numerics;
pub mod susy;

pub use expr::{Expr, Func};
pub use num_complex::Complex64;
