//! Moments of `X = sqrt(2) W'` and `P = -i sqrt(2) d/dz` and the uncertainty product.

use num_complex::Complex64;

use super::diff::richardson_derivative;
use super::{NumericsError, QuadConfig};
use crate::susy::{Superpotential, WaveFunction};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentSet {
    pub mean_x: f64,
    pub mean_p: f64,
    pub var_x: f64,
    pub var_p: f64,
    /// `<G>` with `G = 2 W''`, so that `[X, P] = i G`.
    pub mean_g: f64,
    pub product: f64,
    pub bound: f64,
    pub saturation_ratio: f64,
}

fn moment_cfg() -> QuadConfig {
    QuadConfig {
        abs_tol: 1e-13,
        rel_tol: 1e-11,
        max_subdivisions: 4000,
    }
}

/// Computes the moment set of a normalized state.
///
/// `<P^2>` is taken as `2 int |psi'|^2`.
pub fn moments(psi: &WaveFunction, sp: &Superpotential) -> Result<MomentSet, NumericsError> {
    let cfg = moment_cfg();
    let integral = |what: &str, f: &dyn Fn(f64) -> f64| {
        let r = psi.integrate(f, &cfg);
        if r.converged {
            Ok(r.value)
        } else {
            Err(NumericsError::Quadrature {
                what: format!("{what} of {}", psi.label()),
                result: r,
            })
        }
    };
    let weighted = |g: &dyn Fn(f64) -> Result<f64, crate::expr::EvalError>, z: f64| -> f64 {
        match (psi.density(z), g(z)) {
            (Ok(0.0), _) => 0.0,
            (Ok(d), Ok(v)) => d * v,
            _ => f64::NAN,
        }
    };

    let w1 = |z| sp.w1(z);
    let mean_w1 = integral("<W'>", &|z| weighted(&w1, z))?;
    let mean_w1_sq = integral("<W'^2>", &|z| weighted(&|t| sp.w1(t).map(|v| v * v), z))?;
    let mean_w2 = integral("<W''>", &|z| weighted(&|t| sp.w2(t), z))?;
    let grad_sq = integral("int |psi'|^2", &|z| psi.derivative(z).map_or(f64::NAN, |d| d.norm_sqr()))?;
    let mean_p = if psi.is_real() {
        0.0
    } else {
        let im = integral("<P>", &|z| match (psi.eval(z), psi.derivative(z)) {
            (Ok(v), Ok(d)) => (v.conj() * d).im,
            _ => f64::NAN,
        })?;
        std::f64::consts::SQRT_2 * im
    };

    let mean_x = std::f64::consts::SQRT_2 * mean_w1;
    let var_x = (2.0 * mean_w1_sq - mean_x * mean_x).max(0.0);
    let var_p = (2.0 * grad_sq - mean_p * mean_p).max(0.0);
    let mean_g = 2.0 * mean_w2;
    let product = var_x * var_p;
    let bound = 0.25 * mean_g * mean_g;
    Ok(MomentSet {
        mean_x,
        mean_p,
        var_x,
        var_p,
        mean_g,
        product,
        bound,
        saturation_ratio: product / bound,
    })
}

/// `((XP - PX) f)(z)` by Richardson differences with step `h`; equals `2 i W''(z) f(z)`.
pub fn commutator_action<F: Fn(f64) -> f64>(
    sp: &Superpotential,
    f: F,
    z: f64,
    h: f64,
) -> Result<Complex64, NumericsError> {
    let w1f = |t: f64| sp.w1(t).map_or(f64::NAN, |w| w * f(t));
    let d_w1f = richardson_derivative(w1f, z, h);
    let df = richardson_derivative(&f, z, h);
    let w1 = sp.w1(z)?;
    // X P f = -2i W' f',  P X f = -2i (W' f)'
    let value = 2.0 * (d_w1f - w1 * df);
    if !value.is_finite() {
        return Err(NumericsError::InvalidInput(format!("commutator not finite at z = {z}")));
    }
    Ok(Complex64::new(0.0, value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::susy::{catalog_entry, coherent_state, ground_state};

    #[test]
    fn sho_ground_saturates() {
        let sp = catalog_entry("susy-sho").unwrap();
        let m = moments(&ground_state(&sp).unwrap(), &sp).unwrap();
        assert!((m.saturation_ratio - 1.0).abs() < 1e-9, "{m:?}");
        assert!((m.mean_g - 2.0).abs() < 1e-12);
        assert_eq!(m.mean_p, 0.0);
        // Gaussian exp(-z^2/2): <z^2> = 1/2, so var X = 1
        assert!((m.var_x - 1.0).abs() < 1e-10);
    }

    #[test]
    fn displaced_sho_keeps_widths() {
        let sp = catalog_entry("susy-sho").unwrap();
        let m = moments(&coherent_state(&sp, Complex64::new(2.0, 0.0)).unwrap(), &sp).unwrap();
        assert!((m.mean_x - 2.0 * std::f64::consts::SQRT_2).abs() < 1e-9);
        assert!((m.saturation_ratio - 1.0).abs() < 1e-9);
    }

    #[test]
    fn complex_alpha_carries_momentum() {
        let sp = catalog_entry("susy-sho").unwrap();
        let m = moments(&coherent_state(&sp, Complex64::new(0.0, 1.5)).unwrap(), &sp).unwrap();
        // psi ~ exp(1.5 i z - z^2/2): <P> = sqrt(2) * 1.5
        assert!((m.mean_p - 1.5 * std::f64::consts::SQRT_2).abs() < 1e-9, "{m:?}");
        assert!((m.saturation_ratio - 1.0).abs() < 1e-9);
    }

    #[test]
    fn commutator_is_two_w2() {
        let sp = catalog_entry("double-well").unwrap();
        let f = |t: f64| (-(t - 0.3) * (t - 0.3)).exp();
        for z in [-1.2, 0.1, 0.8] {
            let lhs = commutator_action(&sp, f, z, 1e-3).unwrap();
            let rhs = 2.0 * sp.w2(z).unwrap() * f(z);
            assert!((lhs.im - rhs).abs() < 1e-9 * (1.0 + rhs.abs()), "{z}");
        }
    }
}
