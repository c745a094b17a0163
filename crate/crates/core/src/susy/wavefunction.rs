use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::expr::{EvalError, Expr};
use crate::numerics::diff::richardson_derivative;
use crate::numerics::quad::{adaptive_quad_pieces, adaptive_quad_with, dyadic_breaks, QuadConfig};
use crate::numerics::roots::golden_max;

use super::SusyError;

/// Truncation interval of a wave function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Domain {
    pub lo: f64,
    pub hi: f64,
}

impl Domain {
    pub fn new(lo: f64, hi: f64) -> Self {
        Domain { lo, hi }
    }

    pub fn symmetric(half_width: f64) -> Self {
        Domain::new(-half_width, half_width)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, z: f64) -> bool {
        (self.lo..=self.hi).contains(&z)
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

type BodyFn = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;

#[derive(Clone)]
enum Body {
    /// `exp(linear * z - w_scale * W(z))`.
    Exponential {
        w: Arc<Expr>,
        w1: Arc<Expr>,
        linear: Complex64,
        w_scale: f64,
    },
    Custom(BodyFn),
}

/// Normalized state `body(z) / norm_constant` on a truncation domain.
#[derive(Clone)]
pub struct WaveFunction {
    label: String,
    body: Body,
    norm_constant: f64,
    domain: Domain,
}

impl fmt::Debug for WaveFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WaveFunction")
            .field("label", &self.label)
            .field("norm_constant", &self.norm_constant)
            .field("domain", &self.domain)
            .finish_non_exhaustive()
    }
}

/// Tail-probe shell starts: `|psi|^2` is integrated over `[L, 2L]` (and the mirror).
pub const TAIL_PROBE_LENGTHS: [f64; 3] = [10.0, 20.0, 40.0];
/// Each probe shell must hold at most this fraction of the previous one.
const TAIL_DECAY_RATIO: f64 = 0.9;
/// Starting half-width of the automatic domain.
const INITIAL_HALF_WIDTH: f64 = 8.0;
/// Outermost 10% of the domain and the edge density must fall below this fraction.
const TAIL_FRACTION: f64 = 1e-12;
const MAX_HALF_WIDTH: f64 = 1e15;

fn quad_cfg() -> QuadConfig {
    QuadConfig {
        abs_tol: 0.0,
        rel_tol: 1e-13,
        max_subdivisions: 4000,
    }
}

impl WaveFunction {
    /// `exp(linear z - w_scale W(z))`, gated for normalizability and normalized on
    /// an automatically chosen domain.
    ///
    /// `reject_after_probe` is a reason known in advance to make the state
    /// non-normalizable; it is reported only if the tail probe itself passes.
    pub(crate) fn exponential(
        label: String,
        w: Arc<Expr>,
        w1: Arc<Expr>,
        linear: Complex64,
        w_scale: f64,
        reject_after_probe: Option<String>,
    ) -> Result<Self, SusyError> {
        let body = Body::Exponential {
            w,
            w1,
            linear,
            w_scale,
        };
        let mut psi = WaveFunction {
            label,
            body,
            norm_constant: 1.0,
            domain: Domain::symmetric(INITIAL_HALF_WIDTH),
        };
        psi.check_tails()?;
        if let Some(reason) = reject_after_probe {
            return Err(SusyError::NonNormalizable { label: psi.label, reason });
        }
        psi.choose_domain()?;
        psi.normalize()?;
        Ok(psi)
    }

    /// Wraps an arbitrary function, normalized over `domain`. Its derivative is
    /// taken by finite differences.
    pub fn from_fn(
        label: impl Into<String>,
        f: impl Fn(f64) -> Complex64 + Send + Sync + 'static,
        domain: Domain,
    ) -> Result<Self, SusyError> {
        let mut psi = WaveFunction {
            label: label.into(),
            body: Body::Custom(Arc::new(f)),
            norm_constant: 1.0,
            domain,
        };
        psi.normalize()?;
        Ok(psi)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Positive divisor: `psi = body / norm_constant` has unit L2 norm on the domain.
    pub fn norm_constant(&self) -> f64 {
        self.norm_constant
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn has_analytic_derivative(&self) -> bool {
        matches!(self.body, Body::Exponential { .. })
    }

    /// True when the state is real for real `z`.
    pub fn is_real(&self) -> bool {
        match &self.body {
            Body::Exponential { linear, .. } => linear.im == 0.0,
            Body::Custom(_) => false,
        }
    }

    /// Unnormalized body.
    pub fn body(&self, z: f64) -> Result<Complex64, EvalError> {
        match &self.body {
            Body::Exponential { w, linear, w_scale, .. } => {
                let exponent = linear * z - w_scale * w.eval(z)?;
                Ok(exponent.exp())
            }
            Body::Custom(f) => Ok(f(z)),
        }
    }

    /// Normalized value.
    pub fn eval(&self, z: f64) -> Result<Complex64, EvalError> {
        Ok(self.body(z)? / self.norm_constant)
    }

    /// Normalized derivative: `(linear - w_scale W'(z)) psi(z)` for module-built
    /// states, Richardson central differences otherwise.
    pub fn derivative(&self, z: f64) -> Result<Complex64, EvalError> {
        match &self.body {
            Body::Exponential { w1, linear, w_scale, .. } => {
                let factor = linear - w_scale * w1.eval(z)?;
                Ok(factor * self.eval(z)?)
            }
            Body::Custom(f) => {
                let h = 1e-3;
                let re = richardson_derivative(|t| f(t).re, z, h);
                let im = richardson_derivative(|t| f(t).im, z, h);
                Ok(Complex64::new(re, im) / self.norm_constant)
            }
        }
    }

    /// `|psi(z)|^2` of the normalized state.
    pub fn density(&self, z: f64) -> Result<f64, EvalError> {
        Ok(self.eval(z)?.norm_sqr())
    }

    /// `|body(z)|^2`, with evaluation failures mapped to NaN so that quadrature
    /// reports them as non-convergence.
    fn body_density(&self, z: f64) -> f64 {
        match &self.body {
            Body::Exponential { w, linear, w_scale, .. } => match w.eval(z) {
                Ok(wz) => (2.0 * (linear.re * z - w_scale * wz)).exp(),
                Err(_) => f64::NAN,
            },
            Body::Custom(f) => f(z).norm_sqr(),
        }
    }

    fn integrate_body_density(&self, lo: f64, hi: f64, what: &str) -> Result<f64, SusyError> {
        let breaks = dyadic_breaks(lo, hi, INITIAL_HALF_WIDTH);
        let r = adaptive_quad_pieces(|z| self.body_density(z), &breaks, &quad_cfg());
        if !r.converged {
            return Err(SusyError::Quadrature {
                what: format!("{what} of {}", self.label),
                result: r,
            });
        }
        Ok(r.value)
    }

    /// Integrates `|body|^2` over `[L, 2L]` and `[-2L, -L]` for the probe lengths and
    /// requires geometric decay on both sides.
    fn check_tails(&self) -> Result<(), SusyError> {
        let probe_cfg = QuadConfig {
            abs_tol: 0.0,
            rel_tol: 1e-8,
            max_subdivisions: 2000,
        };
        for sign in [1.0, -1.0] {
            let mut shells = Vec::with_capacity(TAIL_PROBE_LENGTHS.len());
            for l in TAIL_PROBE_LENGTHS {
                let (a, b) = if sign > 0.0 { (l, 2.0 * l) } else { (-2.0 * l, -l) };
                let r = adaptive_quad_with(|z| self.body_density(z), a, b, &probe_cfg);
                if !r.value.is_finite() {
                    return Err(SusyError::NonNormalizable {
                        label: self.label.clone(),
                        reason: format!("|psi|^2 is not finite on [{a}, {b}]"),
                    });
                }
                shells.push(r.value);
            }
            for (pair, lengths) in shells.windows(2).zip(TAIL_PROBE_LENGTHS.windows(2)) {
                if pair[1] > TAIL_DECAY_RATIO * pair[0] {
                    let side = if sign > 0.0 { "right" } else { "left" };
                    return Err(SusyError::NonNormalizable {
                        label: self.label.clone(),
                        reason: format!(
                            "{side} tail does not decay: mass on shell L={} is {:e}, on L={} is {:e}",
                            lengths[0], pair[0], lengths[1], pair[1]
                        ),
                    });
                }
            }
        }
        Ok(())
    }

    fn sampled_peak(&self, lo: f64, hi: f64) -> f64 {
        let n = 2001;
        (0..n)
            .map(|i| self.body_density(lo + (hi - lo) * (i as f64 / (n - 1) as f64)))
            .filter(|v| v.is_finite())
            .fold(0.0, f64::max)
    }

    /// Doubles the half-width from 8 until the outer 10% of the domain holds less
    /// than `TAIL_FRACTION` of the mass and the edge density is below
    /// `TAIL_FRACTION` of the peak.
    fn choose_domain(&mut self) -> Result<(), SusyError> {
        let mut half = INITIAL_HALF_WIDTH;
        let peak = self.sampled_peak(-2.0 * half, 2.0 * half);
        loop {
            let total = self.integrate_body_density(-half, half, "norm")?;
            let outer = self.integrate_body_density(0.9 * half, half, "tail mass")?
                + self.integrate_body_density(-half, -0.9 * half, "tail mass")?;
            let edge = self.body_density(half).max(self.body_density(-half));
            if outer <= TAIL_FRACTION * total && edge <= TAIL_FRACTION * peak {
                self.domain = Domain::symmetric(half);
                return Ok(());
            }
            half *= 2.0;
            if half > MAX_HALF_WIDTH {
                return Err(SusyError::NonNormalizable {
                    label: self.label.clone(),
                    reason: format!("tails still carry mass at |z| = {MAX_HALF_WIDTH:e}"),
                });
            }
        }
    }

    fn normalize(&mut self) -> Result<(), SusyError> {
        self.norm_constant = 1.0;
        let total = self.integrate_body_density(self.domain.lo, self.domain.hi, "norm")?;
        if !(total > 0.0) {
            return Err(SusyError::NonNormalizable {
                label: self.label.clone(),
                reason: "zero norm".into(),
            });
        }
        self.norm_constant = total.sqrt();
        Ok(())
    }

    /// Integrates `f(z)` times the normalized density over the domain.
    pub fn expectation<F: Fn(f64) -> f64>(&self, f: F, cfg: &QuadConfig) -> crate::numerics::QuadratureResult {
        let n2 = self.norm_constant * self.norm_constant;
        let breaks = dyadic_breaks(self.domain.lo, self.domain.hi, INITIAL_HALF_WIDTH);
        adaptive_quad_pieces(
            |z| {
                let d = self.body_density(z) / n2;
                if d == 0.0 {
                    0.0
                } else {
                    f(z) * d
                }
            },
            &breaks,
            cfg,
        )
    }

    /// Integrates `f` over the domain, cut into dyadic shells.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, cfg: &QuadConfig) -> crate::numerics::QuadratureResult {
        let breaks = dyadic_breaks(self.domain.lo, self.domain.hi, INITIAL_HALF_WIDTH);
        adaptive_quad_pieces(f, &breaks, cfg)
    }

    /// `int |psi|^2` over the domain (1 up to quadrature error after normalization).
    pub fn norm_squared(&self) -> Result<f64, SusyError> {
        Ok(self.integrate_body_density(self.domain.lo, self.domain.hi, "norm")?
            / (self.norm_constant * self.norm_constant))
    }

    /// Global maximum of the density, located on a coarse grid and refined.
    pub fn peak(&self) -> (f64, f64) {
        let center_window = self.domain.hi.min(INITIAL_HALF_WIDTH * 2.0);
        let (lo, hi) = (self.domain.lo.max(-center_window), center_window);
        let n = 4001;
        let step = (hi - lo) / (n - 1) as f64;
        let (mut best_z, mut best) = (0.0, f64::NEG_INFINITY);
        for i in 0..n {
            let z = lo + (hi - lo) * (i as f64 / (n - 1) as f64);
            let d = self.body_density(z);
            if d > best {
                best = d;
                best_z = z;
            }
        }
        let z = golden_max(&|t| self.body_density(t), best_z - step, best_z + step, 1e-12);
        let d = self.body_density(z).max(best);
        (z, d / (self.norm_constant * self.norm_constant))
    }

    /// Smallest interval around the peak outside of which the density stays below
    /// `rel` times the peak density.
    pub fn core_window(&self, rel: f64) -> Domain {
        let (z0, peak) = self.peak();
        let n2 = self.norm_constant * self.norm_constant;
        let below = |z: f64| self.body_density(z) / n2 <= rel * peak;
        let edge = |dir: f64, limit: f64| {
            let mut step = 0.5;
            let mut inside = z0;
            loop {
                let z = z0 + dir * step;
                if (dir > 0.0 && z >= limit) || (dir < 0.0 && z <= limit) {
                    return limit;
                }
                if below(z) {
                    // bisect between last point above threshold and z
                    let (mut a, mut b) = (inside, z);
                    for _ in 0..60 {
                        let m = 0.5 * (a + b);
                        if below(m) {
                            b = m;
                        } else {
                            a = m;
                        }
                    }
                    return b;
                }
                inside = z;
                step *= 2.0;
            }
        };
        Domain::new(edge(-1.0, self.domain.lo), edge(1.0, self.domain.hi))
    }

    /// Local maxima of the density `(z, |psi(z)|^2)`, strongest first.
    pub fn density_maxima(&self) -> Vec<(f64, f64)> {
        let window = self.core_window(1e-10);
        let n = 8001;
        let dz = window.width() / (n - 1) as f64;
        let zs: Vec<f64> = (0..n)
            .map(|i| window.lo + window.width() * (i as f64 / (n - 1) as f64))
            .collect();
        let ds: Vec<f64> = zs.iter().map(|&z| self.body_density(z)).collect();
        let n2 = self.norm_constant * self.norm_constant;
        let mut out: Vec<(f64, f64)> = (1..n - 1)
            .filter(|&i| ds[i] > ds[i - 1] && ds[i] >= ds[i + 1])
            .map(|i| {
                let z = golden_max(&|t| self.body_density(t), zs[i] - dz, zs[i] + dz, 1e-12);
                (z, self.body_density(z) / n2)
            })
            .collect();
        out.sort_by(|a, b| b.1.total_cmp(&a.1));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn gaussian_ground() -> WaveFunction {
        let w = parse("z^2/2").unwrap();
        let w1 = w.derivative();
        WaveFunction::exponential("g".into(), Arc::new(w), Arc::new(w1), Complex64::new(0.0, 0.0), 1.0, None).unwrap()
    }

    #[test]
    fn gaussian_norm_is_pi_quarter_root() {
        let psi = gaussian_ground();
        assert!((psi.norm_constant() - std::f64::consts::PI.sqrt().sqrt()).abs() < 1e-12);
        assert!((psi.norm_squared().unwrap() - 1.0).abs() < 1e-10);
        assert_eq!(psi.domain(), Domain::symmetric(8.0));
        let (z, _) = psi.peak();
        assert!(z.abs() < 1e-6);
    }

    #[test]
    fn custom_body_uses_finite_differences() {
        let psi = WaveFunction::from_fn(
            "z exp(-z^2/2)",
            |z| Complex64::new(z * (-z * z / 2.0).exp(), 0.0),
            Domain::symmetric(12.0),
        )
        .unwrap();
        assert!(!psi.has_analytic_derivative());
        // N^2 = sqrt(pi)/2
        assert!((psi.norm_constant().powi(2) - std::f64::consts::PI.sqrt() / 2.0).abs() < 1e-12);
        let z = 0.7;
        let exact = (1.0 - z * z) * (-z * z / 2.0f64).exp() / psi.norm_constant();
        assert!((psi.derivative(z).unwrap().re - exact).abs() < 1e-10);
    }

    #[test]
    fn core_window_brackets_the_bulk() {
        let psi = gaussian_ground();
        let w = psi.core_window(1e-6);
        // exp(-z^2) = 1e-6 at |z| = 3.7169
        assert!((w.hi - 3.716_922).abs() < 1e-5, "{w}");
        assert!((w.lo + 3.716_922).abs() < 1e-5, "{w}");
    }
}
