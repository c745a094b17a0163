use std::f64::consts::SQRT_2;

use num_complex::Complex64;

use crate::expr::{EvalError, Expr};

use super::{GrowthClass, Superpotential, SusyError, WaveFunction};

/// `V = W'^2 - W''` as an expression tree.
pub fn potential_from_w(sp: &Superpotential) -> Expr {
    let w1 = sp.w1_expr().clone();
    let w2 = sp.w2_expr().clone();
    Expr::Sub(Box::new(w1.powf(2.0)), Box::new(w2))
}

/// `exp(-W) / N0`.
pub fn ground_state(sp: &Superpotential) -> Result<WaveFunction, SusyError> {
    WaveFunction::exponential(
        format!("{} ground", sp.name()),
        sp.w_shared(),
        sp.w1_shared(),
        Complex64::new(0.0, 0.0),
        1.0,
        None,
    )
}

fn fmt_complex(c: Complex64) -> String {
    if c.im == 0.0 {
        format!("{}", c.re)
    } else {
        format!("{}{:+}i", c.re, c.im)
    }
}

/// `exp(alpha z - W) / N_alpha`, the eigenstate of `A = d/dz + W'` with eigenvalue `alpha`.
///
/// Fails when the tail probe finds the density is not integrable, as for any
/// nonzero `Re(alpha)` when `W` grows logarithmically.
pub fn coherent_state(sp: &Superpotential, alpha: Complex64) -> Result<WaveFunction, SusyError> {
    if !(alpha.re.is_finite() && alpha.im.is_finite()) {
        return Err(SusyError::InvalidParameter(format!("alpha = {alpha}")));
    }
    let label = format!("{} coherent alpha={}", sp.name(), fmt_complex(alpha));
    WaveFunction::exponential(label, sp.w_shared(), sp.w1_shared(), alpha, 1.0, log_growth_reason(sp, alpha.re))
        .map_err(|e| explain_log_growth(e, sp, alpha.re))
}

/// A nonzero linear exponent always beats a logarithmically growing `W`, even
/// when the decay is too slow for the tail probe to see it.
fn log_growth_reason(sp: &Superpotential, linear_re: f64) -> Option<String> {
    (linear_re != 0.0 && sp.growth() == GrowthClass::Logarithmic).then(|| {
        format!("W grows only logarithmically, so exp({linear_re} z) wins on one side")
    })
}

/// Adds the growth class to a tail-probe failure caused by a linear exponent.
fn explain_log_growth(err: SusyError, sp: &Superpotential, linear_re: f64) -> SusyError {
    match (err, log_growth_reason(sp, linear_re)) {
        (SusyError::NonNormalizable { label, reason }, Some(why)) if !reason.contains(&why) => {
            SusyError::NonNormalizable {
                label,
                reason: format!("{reason}; {why}"),
            }
        }
        (other, _) => other,
    }
}

/// Parameters of the squeezed family `(X + i B P) psi = C psi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezeParams {
    pub b: f64,
    pub c: Complex64,
    /// Coherent eigenvalue the parameters correspond to, if any (`B = 1`, `C = sqrt(2) alpha`).
    pub alpha: Option<Complex64>,
}

impl SqueezeParams {
    pub fn new(b: f64, c: Complex64) -> Self {
        SqueezeParams { b, c, alpha: None }
    }

    /// The coherent point `B = 1`, `C = sqrt(2) alpha`.
    pub fn coherent(alpha: Complex64) -> Self {
        SqueezeParams {
            b: 1.0,
            c: alpha * SQRT_2,
            alpha: Some(alpha),
        }
    }
}

/// `exp(C z / (sqrt(2) B) - W / B)`, normalized.
pub fn squeezed_state(sp: &Superpotential, params: SqueezeParams) -> Result<WaveFunction, SusyError> {
    let SqueezeParams { b, c, .. } = params;
    if !(b > 0.0 && b.is_finite()) {
        return Err(SusyError::InvalidParameter(format!("B must be positive, got {b}")));
    }
    if !(c.re.is_finite() && c.im.is_finite()) {
        return Err(SusyError::InvalidParameter(format!("C = {c}")));
    }
    let linear = c / (SQRT_2 * b);
    let label = format!("{} squeezed B={} C={}", sp.name(), b, fmt_complex(c));
    WaveFunction::exponential(label, sp.w_shared(), sp.w1_shared(), linear, 1.0 / b, log_growth_reason(sp, linear.re))
        .map_err(|e| explain_log_growth(e, sp, linear.re))
}

/// `z -> psi'(z) + W'(z) psi(z)`.
pub fn apply_annihilation<'a>(
    sp: &'a Superpotential,
    psi: &'a WaveFunction,
) -> impl Fn(f64) -> Result<Complex64, EvalError> + 'a {
    move |z| Ok(psi.derivative(z)? + sp.w1(z)? * psi.eval(z)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::susy::{catalog_entry, Domain};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn closed_form_potentials() {
        let v = potential_from_w(&catalog_entry("volcano").unwrap());
        assert!((v.eval(0.0).unwrap() + (5f64.sqrt() - 0.5)).abs() < 1e-12);
        let v = potential_from_w(&catalog_entry("plugged-volcano").unwrap());
        assert!((v.eval(0.0).unwrap() - 0.25).abs() < 1e-14);
    }

    #[test]
    fn double_well_ground() {
        let sp = catalog_entry("double-well").unwrap();
        let psi = ground_state(&sp).unwrap();
        assert!((psi.norm_constant() - 2.041_016_430_347_088).abs() < 1e-9);
        let maxima = psi.density_maxima();
        assert_eq!(maxima.len(), 2);
        for (z, _) in maxima {
            assert!((z.abs() - 1.0).abs() < 1e-6, "{z}");
        }
    }

    #[test]
    fn alpha_zero_is_ground() {
        let sp = catalog_entry("double-well").unwrap();
        let g = ground_state(&sp).unwrap();
        let a = coherent_state(&sp, c(0.0)).unwrap();
        assert_eq!(g.norm_constant(), a.norm_constant());
    }

    #[test]
    fn volcano_rejects_displacement() {
        let sp = catalog_entry("volcano").unwrap();
        assert!(matches!(coherent_state(&sp, c(1.0)), Err(SusyError::NonNormalizable { .. })));
        // too small for the shell probe to notice, still rejected
        assert!(matches!(coherent_state(&sp, c(0.01)), Err(SusyError::NonNormalizable { .. })));
        assert!(coherent_state(&sp, c(0.0)).is_ok());
        // purely imaginary alpha only adds a phase
        assert!(coherent_state(&sp, Complex64::new(0.0, 1.0)).is_ok());
    }

    #[test]
    fn squeezed_sho_doubles_variance() {
        let sp = catalog_entry("susy-sho").unwrap();
        let g = ground_state(&sp).unwrap();
        let s = squeezed_state(&sp, SqueezeParams::new(2.0, c(0.0))).unwrap();
        let cfg = crate::numerics::QuadConfig::relative(1e-12);
        let v0 = g.expectation(|z| z * z, &cfg).value;
        let v1 = s.expectation(|z| z * z, &cfg).value;
        assert!((v1 / v0 - 2.0).abs() < 1e-10);
        assert!(squeezed_state(&sp, SqueezeParams::new(0.0, c(0.0))).is_err());
    }

    #[test]
    fn ladder_on_first_excited_analog() {
        let sp = catalog_entry("susy-sho").unwrap();
        let psi = WaveFunction::from_fn("z e^-W", |z| c(z * (-z * z / 2.0).exp()), Domain::symmetric(10.0)).unwrap();
        let a = apply_annihilation(&sp, &psi);
        for z in [-1.5, -0.2, 0.0, 0.9, 2.4] {
            let expect = (-z * z / 2.0f64).exp() / psi.norm_constant();
            assert!((a(z).unwrap() - c(expect)).norm() < 1e-9, "{z}");
        }
    }

    #[test]
    fn custom_w_without_normalizable_ground() {
        let sp = Superpotential::new("inverted", parse("-z^2/2").unwrap());
        assert!(matches!(ground_state(&sp), Err(SusyError::NonNormalizable { .. })));
    }
}
