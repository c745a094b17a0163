//! Natural classical variable `X(x)` for an even potential:
//!
//! `dX/dx = omega * mass_factor * sqrt((X_max^2 - X^2) / (E - V(x)))`, `X(0) = 0`,
//! integrated out to the right turning point `V(x_t) = E`.

use super::roots::find_root;
use super::NumericsError;
use crate::expr::Expr;

#[derive(Debug, Clone, PartialEq)]
pub struct NaturalVariableProblem {
    pub potential: Expr,
    pub energy: f64,
    pub omega: f64,
    pub x_max: f64,
    /// The `sqrt(m / 2)` factor; `1/2` for `H = p^2 + V` (mass `1/2`).
    pub mass_factor: f64,
}

impl NaturalVariableProblem {
    /// `V = x^2`, `E = 1`: period `pi`, so `omega = 2`, and `X = x`.
    pub fn oscillator() -> Self {
        NaturalVariableProblem {
            potential: Expr::Var.powf(2.0),
            energy: 1.0,
            omega: 2.0,
            x_max: 1.0,
            mass_factor: 0.5,
        }
    }

    /// `V = |x|`, `E = 1`: period 4, so `omega = pi / 2`.
    pub fn linear() -> Self {
        NaturalVariableProblem {
            potential: Expr::call(crate::expr::Func::Abs, Expr::Var),
            energy: 1.0,
            omega: std::f64::consts::FRAC_PI_2,
            x_max: 1.0,
            mass_factor: 0.5,
        }
    }

    fn rate(&self) -> f64 {
        self.omega * self.mass_factor
    }
}

/// Kink detector for the integrand `g = dX/dx`, mirrored to `x < 0` (`g` is even).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothnessDiagnostic {
    /// Largest mismatch between the left and right one-sided slopes of `g`.
    pub max_jump: f64,
    pub location: f64,
    pub tolerance: f64,
    pub singular: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NaturalSolution {
    pub x: Vec<f64>,
    pub big_x: Vec<f64>,
    /// `dX/dx` at each sample.
    pub integrand: Vec<f64>,
    pub turning_point: f64,
    pub diagnostic: SmoothnessDiagnostic,
}

impl NaturalSolution {
    /// Piecewise-linear interpolation of `X` at `x` in `[0, x_t]`.
    pub fn interpolate(&self, x: f64) -> Option<f64> {
        if !(0.0..=self.turning_point).contains(&x) {
            return None;
        }
        let i = self.x.partition_point(|&t| t < x);
        if i == 0 {
            return Some(self.big_x[0]);
        }
        let (x0, x1) = (self.x[i - 1], self.x[i]);
        let (y0, y1) = (self.big_x[i - 1], self.big_x[i]);
        Some(y0 + (y1 - y0) * (x - x0) / (x1 - x0))
    }
}

/// Relative slope-mismatch threshold for the diagnostic.
pub const SMOOTHNESS_TOL: f64 = 1e-3;
/// Primary integration stops this fraction of the range short of the turning point.
const TURNING_GAP: f64 = 1e-4;
/// Overshoot of `X_max` accepted as roundoff.
const OVERSHOOT: f64 = 1e-6;

fn turning_point(prob: &NaturalVariableProblem) -> Result<f64, NumericsError> {
    let gap = |x: f64| prob.potential.eval(x).map_or(f64::NAN, |v| v - prob.energy);
    let mut hi = 1.0;
    while !(gap(hi) >= 0.0) {
        if gap(hi).is_nan() {
            return Err(NumericsError::InvalidInput(format!("V cannot be evaluated at x = {hi}")));
        }
        hi *= 2.0;
        if hi > 1e6 {
            return Err(NumericsError::TurningPointNotFound {
                energy: prob.energy,
                searched_to: hi,
            });
        }
    }
    find_root(&gap, 0.0, hi, 1e-14).ok_or(NumericsError::TurningPointNotFound {
        energy: prob.energy,
        searched_to: hi,
    })
}

/// Integrates with `n_steps` RK4 steps on `[0, x_t - eps]`, `eps = 1e-4 x_t`, and
/// closes the last gap with the local model `X_max - X ~ a (x_t - x)`,
/// `a = 2 X_max k^2 / V'(x_t)`, where both the numerator and the denominator vanish
/// linearly.
pub fn natural_variable_solve(prob: &NaturalVariableProblem, n_steps: usize) -> Result<NaturalSolution, NumericsError> {
    natural_variable_solve_with(prob, n_steps, SMOOTHNESS_TOL)
}

/// As [`natural_variable_solve`] with a custom relative threshold for the kink diagnostic.
pub fn natural_variable_solve_with(
    prob: &NaturalVariableProblem,
    n_steps: usize,
    smoothness_tol: f64,
) -> Result<NaturalSolution, NumericsError> {
    if n_steps < 100 {
        return Err(NumericsError::InvalidInput(format!("n_steps must be at least 100, got {n_steps}")));
    }
    if !(prob.x_max > 0.0 && prob.omega > 0.0 && prob.mass_factor > 0.0) {
        return Err(NumericsError::InvalidInput("omega, X_max and mass_factor must be positive".into()));
    }
    let v0 = prob.potential.eval(0.0)?;
    if !(prob.energy > v0) {
        return Err(NumericsError::InvalidInput(format!("E = {} does not exceed V(0) = {v0}", prob.energy)));
    }
    let x_t = turning_point(prob)?;
    let eps = TURNING_GAP * x_t;
    let end = x_t - eps;
    let h = end / n_steps as f64;
    let k = prob.rate();
    let xm2 = prob.x_max * prob.x_max;

    let rhs = |x: f64, big: f64| -> Result<f64, NumericsError> {
        let den = prob.energy - prob.potential.eval(x)?;
        let num = (xm2 - big * big).max(0.0);
        if den <= 0.0 {
            return Err(NumericsError::InvalidInput(format!("E - V(x) <= 0 at x = {x} before the turning point")));
        }
        Ok(k * (num / den).sqrt())
    };

    let mut xs = Vec::with_capacity(n_steps + 2);
    let mut big = Vec::with_capacity(n_steps + 2);
    let mut g = Vec::with_capacity(n_steps + 2);
    let mut y = 0.0;
    for i in 0..=n_steps {
        let x = end * (i as f64 / n_steps as f64);
        xs.push(x);
        big.push(y);
        g.push(rhs(x, y)?);
        if i == n_steps {
            break;
        }
        let k1 = rhs(x, y)?;
        let k2 = rhs(x + 0.5 * h, y + 0.5 * h * k1)?;
        let k3 = rhs(x + 0.5 * h, y + 0.5 * h * k2)?;
        let k4 = rhs(x + h, y + h * k3)?;
        y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if y > prob.x_max * (1.0 + OVERSHOOT) {
            return Err(NumericsError::NegativeIntegrand {
                x: x + h,
                value: y,
                x_max: prob.x_max,
            });
        }
    }

    let slope = super::diff::richardson_derivative(|t| prob.potential.eval(t).unwrap_or(f64::NAN), x_t, 0.1 * eps);
    let a = if slope > 0.0 { 2.0 * prob.x_max * k * k / slope } else { 0.0 };
    let closing = (y + a * eps).min(prob.x_max);
    xs.push(x_t);
    big.push(closing);
    g.push(a);

    let diagnostic = smoothness(&g[..=n_steps], h, smoothness_tol);
    Ok(NaturalSolution {
        x: xs,
        big_x: big,
        integrand: g,
        turning_point: x_t,
        diagnostic,
    })
}

/// Compares one-sided three-point slopes of the mirrored integrand at every
/// interior sample, skipping the outer 10% on each side.
fn smoothness(g: &[f64], h: f64, rel_tol: f64) -> SmoothnessDiagnostic {
    let n = g.len();
    // mirrored samples at x = -(n-1)h .. (n-1)h
    let full: Vec<f64> = g[1..].iter().rev().chain(g.iter()).copied().collect();
    let m = full.len();
    let skip = (m / 10).max(2);
    let mut max_jump = 0.0f64;
    let mut location = 0.0;
    let mut max_slope = 0.0f64;
    for i in skip..m - skip {
        let left = (3.0 * full[i] - 4.0 * full[i - 1] + full[i - 2]) / (2.0 * h);
        let right = (-3.0 * full[i] + 4.0 * full[i + 1] - full[i + 2]) / (2.0 * h);
        max_slope = max_slope.max(left.abs()).max(right.abs());
        let jump = (right - left).abs();
        if jump > max_jump {
            max_jump = jump;
            location = (i as f64 - (n - 1) as f64) * h;
        }
    }
    let tolerance = rel_tol * (1.0 + max_slope);
    SmoothnessDiagnostic {
        max_jump,
        location,
        tolerance,
        singular: max_jump > tolerance,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oscillator_is_linear() {
        let sol = natural_variable_solve(&NaturalVariableProblem::oscillator(), 1000).unwrap();
        assert!((sol.turning_point - 1.0).abs() < 1e-12);
        for (&x, &big) in sol.x.iter().zip(&sol.big_x).skip(1) {
            assert!((big / x - 1.0).abs() < 1e-6, "{x}: {big}");
        }
        assert!((sol.big_x.last().unwrap() - 1.0).abs() < 1e-4);
        assert!(!sol.diagnostic.singular, "{:?}", sol.diagnostic);
    }

    #[test]
    fn linear_potential_is_singular_at_origin() {
        let sol = natural_variable_solve(&NaturalVariableProblem::linear(), 1000).unwrap();
        assert!(sol.diagnostic.singular);
        assert!(sol.diagnostic.location.abs() < 1e-12);
        // one-sided slopes are +-k X_max / 2
        assert!((sol.diagnostic.max_jump - std::f64::consts::FRAC_PI_4).abs() < 1e-2, "{:?}", sol.diagnostic);
    }

    #[test]
    fn rejects_bad_input() {
        let mut p = NaturalVariableProblem::oscillator();
        assert!(natural_variable_solve(&p, 10).is_err());
        p.energy = -1.0;
        assert!(natural_variable_solve(&p, 200).is_err());
        let mut p = NaturalVariableProblem::oscillator();
        p.potential = Expr::Const(0.0);
        assert!(matches!(
            natural_variable_solve(&p, 200),
            Err(NumericsError::TurningPointNotFound { .. })
        ));
    }
}
