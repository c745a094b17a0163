//! Globally adaptive Gauss-Kronrod (7/15) quadrature.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Outcome of an adaptive integration.
///
/// `converged` is true only when `error_estimate` is within the requested
/// tolerance; otherwise `value` is the best available estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub subdivisions: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            abs_tol: 0.0,
            rel_tol: 1e-12,
            max_subdivisions: 2000,
        }
    }
}

impl QuadConfig {
    pub fn absolute(tol: f64) -> Self {
        QuadConfig {
            abs_tol: tol,
            rel_tol: 0.0,
            ..Default::default()
        }
    }

    pub fn relative(tol: f64) -> Self {
        QuadConfig {
            abs_tol: 0.0,
            rel_tol: tol,
            ..Default::default()
        }
    }

    fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// Polynomial degree integrated exactly by one 15-point Kronrod panel.
pub const PANEL_DEGREE: usize = 22;

/// One 15-point Kronrod panel: `(integral, error estimate)`.
fn kronrod15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut gauss = fc * WG[3];
    let mut kronrod = fc * WGK[7];
    let mut res_abs = kronrod.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let (f1, f2) = (f(center - dx), f(center + dx));
        fv1[j] = f1;
        fv2[j] = f2;
        kronrod += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kronrod;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let result = kronrod * half;
    res_abs *= half.abs();
    res_asc *= half.abs();
    let mut err = ((kronrod - gauss) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    (result, err)
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// Integrates `f` over `[a, b]` to absolute tolerance `tol`.
pub fn adaptive_quad<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> QuadratureResult {
    adaptive_quad_with(f, a, b, &QuadConfig::absolute(tol))
}

/// Integrates `f` over `[a, b]`, bisecting the panel with the largest error
/// estimate until the total estimate meets `cfg` or the subdivision cap is hit.
pub fn adaptive_quad_with<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, cfg: &QuadConfig) -> QuadratureResult {
    if a == b {
        return QuadratureResult {
            value: 0.0,
            error_estimate: 0.0,
            subdivisions: 0,
            converged: true,
        };
    }
    let (value, err) = kronrod15(&f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Panel { a, b, value, err });
    let mut total = value;
    let mut total_err = err;
    let mut subdivisions = 1;
    while total_err > cfg.target(total) && subdivisions < cfg.max_subdivisions {
        if !total.is_finite() || !total_err.is_finite() {
            break;
        }
        let worst = heap.pop().expect("heap holds at least one panel");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a.min(worst.b) || mid >= worst.a.max(worst.b) {
            heap.push(worst);
            break;
        }
        let (v1, e1) = kronrod15(&f, worst.a, mid);
        let (v2, e2) = kronrod15(&f, mid, worst.b);
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.err;
        heap.push(Panel { a: worst.a, b: mid, value: v1, err: e1 });
        heap.push(Panel { a: mid, b: worst.b, value: v2, err: e2 });
        subdivisions += 1;
    }
    // re-sum to shed drift from the running updates
    let mut panels: Vec<Panel> = heap.into_vec();
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let value: f64 = panels.iter().map(|p| p.value).sum();
    let error_estimate: f64 = panels.iter().map(|p| p.err).sum();
    let converged = value.is_finite() && error_estimate.is_finite() && error_estimate <= cfg.target(value);
    QuadratureResult {
        value,
        error_estimate,
        subdivisions,
        converged,
    }
}

/// Integrates over consecutive intervals `[breaks[i], breaks[i + 1]]` and sums.
pub fn adaptive_quad_pieces<F: Fn(f64) -> f64>(f: F, breaks: &[f64], cfg: &QuadConfig) -> QuadratureResult {
    let mut out = QuadratureResult {
        value: 0.0,
        error_estimate: 0.0,
        subdivisions: 0,
        converged: true,
    };
    for w in breaks.windows(2) {
        let r = adaptive_quad_with(&f, w[0], w[1], cfg);
        out.value += r.value;
        out.error_estimate += r.error_estimate;
        out.subdivisions += r.subdivisions;
        out.converged &= r.converged;
    }
    out
}

/// Breakpoints for `[lo, hi]` at `0` and `+-core * 2^k`, so that wide domains are
/// cut into shells of geometrically growing width.
pub fn dyadic_breaks(lo: f64, hi: f64, core: f64) -> Vec<f64> {
    let mut pts = vec![lo, hi];
    if lo < 0.0 && hi > 0.0 {
        pts.push(0.0);
    }
    let mut r = core;
    while r < lo.abs().max(hi.abs()) {
        for p in [-r, r] {
            if p > lo && p < hi {
                pts.push(p);
            }
        }
        r *= 2.0;
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exactness() {
        let r = adaptive_quad(|z| z * z, 0.0, 1.0, 1e-12);
        assert!(r.converged);
        assert!((r.value - 1.0 / 3.0).abs() <= 1e-12);
        for k in 0..=PANEL_DEGREE as i32 {
            let (value, _) = kronrod15(&|z: f64| z.powi(k), 0.0, 1.0);
            let exact = 1.0 / (k as f64 + 1.0);
            assert!((value - exact).abs() <= 1e-13, "degree {k}: {value} vs {exact}");
        }
    }

    #[test]
    fn gaussian_integral() {
        let r = adaptive_quad_with(|z: f64| (-z * z).exp(), -40.0, 40.0, &QuadConfig::relative(1e-13));
        assert!(r.converged);
        assert!((r.value - std::f64::consts::PI.sqrt()).abs() <= 1e-10);
    }

    #[test]
    fn double_well_norm_squared() {
        let r = adaptive_quad(|z: f64| (z * z - z.powi(4) / 2.0).exp(), -8.0, 8.0, 1e-12);
        assert!(r.converged);
        // 2.0410^2 within 2e-2; reference value 4.16574806894677 (40-digit quadrature)
        assert!((r.value - 2.0410f64.powi(2)).abs() <= 2e-2);
        assert!((r.value - 4.165_748_068_946_77).abs() <= 1e-11);
    }

    #[test]
    fn reports_non_convergence() {
        let r = adaptive_quad_with(
            |z: f64| 1.0 / z.abs().sqrt(),
            -1.0,
            1.0,
            &QuadConfig { abs_tol: 1e-14, rel_tol: 0.0, max_subdivisions: 20 },
        );
        assert!(!r.converged);
        assert!(r.error_estimate > 1e-14);
        assert!(r.subdivisions <= 20);
        let r = adaptive_quad(|_| f64::NAN, 0.0, 1.0, 1e-8);
        assert!(!r.converged);
    }

    #[test]
    fn reversed_limits_negate() {
        let r = adaptive_quad(f64::exp, 1.0, 0.0, 1e-13);
        assert!((r.value + (1f64.exp() - 1.0)).abs() < 1e-13);
    }

    #[test]
    fn breaks_are_dyadic() {
        assert_eq!(dyadic_breaks(-20.0, 20.0, 8.0), vec![-20.0, -16.0, -8.0, 0.0, 8.0, 16.0, 20.0]);
        assert_eq!(dyadic_breaks(1.0, 3.0, 8.0), vec![1.0, 3.0]);
    }
}
