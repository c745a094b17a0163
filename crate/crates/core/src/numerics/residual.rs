//! Pointwise residual of the time-independent Schrödinger equation.

use num_complex::Complex64;

use super::diff::{central_second_difference, richardson_second_derivative};
use super::NumericsError;
use crate::expr::Expr;
use crate::susy::{Domain, WaveFunction};

/// How `psi''` is approximated on the grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SecondDerivative {
    /// Extrapolated tableau starting from `h`.
    Richardson,
    /// Plain three-point stencil with step `h`.
    Central,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualConfig {
    pub points: usize,
    /// Grid interval; `None` uses the window where `|psi| >= core_rel * max |psi|`,
    /// symmetrized about 0 when it straddles the origin.
    pub window: Option<Domain>,
    pub core_rel: f64,
    /// Finite-difference step; `None` uses `min(1e-2, grid spacing / 2)`.
    pub step: Option<f64>,
    pub scheme: SecondDerivative,
}

impl Default for ResidualConfig {
    fn default() -> Self {
        ResidualConfig {
            points: 2001,
            window: None,
            core_rel: 1e-6,
            step: None,
            scheme: SecondDerivative::Richardson,
        }
    }
}

/// Uniform grid `lo + (hi - lo) i / (n - 1)`; hits 0 exactly for symmetric intervals
/// with odd `n`.
pub fn uniform_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n)
        .map(|i| lo + (hi - lo) * (i as f64 / (n - 1) as f64))
        .collect()
}

/// `max |-psi'' + V psi - E psi| / max |psi|` on the default grid.
pub fn schrodinger_residual(psi: &WaveFunction, potential: &Expr, energy: f64) -> Result<f64, NumericsError> {
    schrodinger_residual_with(psi, potential, energy, &ResidualConfig::default())
}

pub fn schrodinger_residual_with(
    psi: &WaveFunction,
    potential: &Expr,
    energy: f64,
    cfg: &ResidualConfig,
) -> Result<f64, NumericsError> {
    if cfg.points < 3 {
        return Err(NumericsError::InvalidInput(format!("need at least 3 grid points, got {}", cfg.points)));
    }
    let window = match cfg.window {
        Some(w) => w,
        None => {
            let core = psi.core_window(cfg.core_rel * cfg.core_rel);
            if core.lo < 0.0 && core.hi > 0.0 {
                Domain::symmetric(core.lo.abs().max(core.hi))
            } else {
                core
            }
        }
    };
    let grid = uniform_grid(window.lo, window.hi, cfg.points);
    let spacing = window.width() / (cfg.points - 1) as f64;
    let h = cfg.step.unwrap_or_else(|| (0.5 * spacing).min(1e-2));

    let re = |t: f64| psi.eval(t).map_or(f64::NAN, |v| v.re);
    let im = |t: f64| psi.eval(t).map_or(f64::NAN, |v| v.im);
    let second = |f: &dyn Fn(f64) -> f64, z: f64| match cfg.scheme {
        SecondDerivative::Richardson => richardson_second_derivative(f, z, h).0,
        SecondDerivative::Central => central_second_difference(f, z, h),
    };
    let real = psi.is_real();

    let mut worst = 0.0f64;
    let mut peak = 0.0f64;
    for &z in &grid {
        let value = psi.eval(z)?;
        let d2 = if real {
            Complex64::new(second(&re, z), 0.0)
        } else {
            Complex64::new(second(&re, z), second(&im, z))
        };
        let v = potential.eval(z)?;
        let r = (-d2 + (v - energy) * value).norm();
        if !r.is_finite() {
            return Err(NumericsError::InvalidInput(format!("residual not finite at z = {z}")));
        }
        worst = worst.max(r);
        peak = peak.max(value.norm());
    }
    Ok(worst / peak)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::susy::{catalog_entry, ground_state, potential_from_w};

    #[test]
    fn grid_contains_origin() {
        let g = uniform_grid(-3.7, 3.7, 2001);
        assert_eq!(g[1000], 0.0);
        assert_eq!(g[0], -3.7);
        assert_eq!(g[2000], 3.7);
    }

    #[test]
    fn ground_states_solve_zero_energy() {
        for name in ["double-well", "susy-sho", "linear-airy"] {
            let sp = catalog_entry(name).unwrap();
            let psi = ground_state(&sp).unwrap();
            let v = potential_from_w(&sp);
            let r = schrodinger_residual(&psi, &v, 0.0).unwrap();
            assert!(r <= 1e-6, "{name}: {r:e}");
        }
    }

    #[test]
    fn energy_offset_shows_up() {
        let sp = catalog_entry("double-well").unwrap();
        let psi = ground_state(&sp).unwrap();
        let r = schrodinger_residual(&psi, &potential_from_w(&sp), 0.1).unwrap();
        assert!((r - 0.1).abs() < 1e-6, "{r}");
    }
}
