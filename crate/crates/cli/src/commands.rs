use std::fmt;

use susyqm::airy::{linear_ground_energy, linear_spectrum};
use susyqm::expr::{parse_with, EvalError};
use susyqm::numerics::natural::{natural_variable_solve_with, NaturalVariableProblem, SMOOTHNESS_TOL};
use susyqm::numerics::quad::{adaptive_quad_with, QuadConfig};
use susyqm::numerics::{moments, schrodinger_residual_with, NumericsError, ResidualConfig};
use susyqm::susy::{
    apply_annihilation, catalog_constants, catalog_entry, coherent_state, ground_state, potential_from_w,
    squeezed_state, SqueezeParams, Superpotential, SusyError, WaveFunction,
};
use susyqm::Complex64;

use crate::args::{Global, NaturalArgs, Preset, Source, SpectrumArgs, StateArgs, SystemArgs, VerifyArgs};
use crate::output::{num, CurveFile};

pub const DEFAULT_POINTS: usize = 401;
const RESIDUAL_TOL: f64 = 1e-6;
const NORM_TOL: f64 = 1e-8;
const EIGEN_TOL: f64 = 1e-8;
const UNCERTAINTY_SLACK: f64 = 1e-9;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numerical(String),
    /// Checks ran and at least one failed; the report is still emitted.
    Verification(CurveFile),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Numerical(_) => 2,
            CliError::Verification(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
            CliError::Verification(_) => write!(f, "verification failed"),
        }
    }
}

impl From<SusyError> for CliError {
    fn from(e: SusyError) -> Self {
        match e {
            SusyError::Parse(_) | SusyError::UnknownSystem(_) | SusyError::InvalidParameter(_) => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

impl From<EvalError> for CliError {
    fn from(e: EvalError) -> Self {
        CliError::Numerical(e.to_string())
    }
}

impl From<NumericsError> for CliError {
    fn from(e: NumericsError) -> Self {
        match e {
            NumericsError::InvalidInput(_) => CliError::Usage(e.to_string()),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

struct Resolved {
    sp: Superpotential,
    /// `--system=NAME` or `--expr=W`.
    arg: String,
}

fn resolve(source: &Source) -> Result<Resolved, CliError> {
    match (&source.system, &source.expr) {
        (Some(name), None) => {
            let sp = catalog_entry(name)?;
            let arg = format!("--system={}", sp.name());
            Ok(Resolved { sp, arg })
        }
        (None, Some(src)) => {
            let sp = Superpotential::parse("custom", src, &catalog_constants())?;
            Ok(Resolved {
                sp,
                arg: format!("--expr={src}"),
            })
        }
        _ => Err(CliError::Usage("give exactly one of --system or --expr".into())),
    }
}

fn default_range(name: &str) -> (f64, f64) {
    match name {
        "double-well" => (-3.0, 4.0),
        "linear-airy" => (-6.0, 8.0),
        _ => (-5.0, 5.0),
    }
}

fn default_scale(name: &str) -> f64 {
    match name {
        "double-well" => 5.0,
        "linear-airy" => 15.0,
        _ => 1.0,
    }
}

fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    susyqm::numerics::residual::uniform_grid(lo, hi, n)
}

fn sampling(global: &Global, name: &str) -> Result<(f64, f64, usize), CliError> {
    let (lo, hi) = global.range.unwrap_or_else(|| default_range(name));
    let n = global.points.unwrap_or(DEFAULT_POINTS);
    if n < 2 {
        return Err(CliError::Usage(format!("--points must be at least 2, got {n}")));
    }
    Ok((lo, hi, n))
}

fn reject(global: &Global, command: &str, tol: bool, range: bool) -> Result<(), CliError> {
    if tol && global.tol.is_some() {
        return Err(CliError::Usage(format!("--tol does not apply to `{command}`")));
    }
    if range && (global.range.is_some() || global.points.is_some()) {
        return Err(CliError::Usage(format!("--range/--points do not apply to `{command}`")));
    }
    Ok(())
}

/// Flags shared by every reproduce line.
fn common_args(global: &Global, args: &mut Vec<String>) {
    if let Some(t) = global.tol {
        args.push(format!("--tol={}", num(t)));
    }
    if global.json {
        args.push("--json".into());
    }
}

fn sampling_args(lo: f64, hi: f64, n: usize, args: &mut Vec<String>) {
    args.push(format!("--range={}:{}", num(lo), num(hi)));
    args.push(format!("--points={n}"));
}

pub fn potential(global: &Global, a: &SystemArgs) -> Result<CurveFile, CliError> {
    reject(global, "potential", true, false)?;
    let r = resolve(&a.source)?;
    let (lo, hi, n) = sampling(global, r.sp.name())?;
    let v = potential_from_w(&r.sp);
    let zs = grid(lo, hi, n);
    let vs = zs
        .iter()
        .map(|&z| v.eval(z))
        .collect::<Result<Vec<_>, _>>()?;

    let mut f = CurveFile::new("potential");
    f.meta("system", r.sp.name());
    f.meta("W", r.sp.w_expr().to_string());
    f.meta("range", format!("{}:{}", num(lo), num(hi)));
    f.meta("points", n.to_string());
    let mut args = vec!["potential".to_owned(), r.arg];
    sampling_args(lo, hi, n, &mut args);
    common_args(global, &mut args);
    f.reproduce(&args);
    f.numbers("z", zs);
    f.numbers("V", vs);
    Ok(f)
}

fn build_state(sp: &Superpotential, alpha: f64, squeeze: Option<f64>) -> Result<WaveFunction, SusyError> {
    let alpha = Complex64::new(alpha, 0.0);
    match squeeze {
        Some(b) => squeezed_state(sp, SqueezeParams::new(b, alpha * std::f64::consts::SQRT_2)),
        None => coherent_state(sp, alpha),
    }
}

pub fn state(global: &Global, a: &StateArgs) -> Result<CurveFile, CliError> {
    reject(global, "state", true, false)?;
    if a.alpha.is_empty() {
        return Err(CliError::Usage("--alpha needs at least one value".into()));
    }
    let r = resolve(&a.source)?;
    let (lo, hi, n) = sampling(global, r.sp.name())?;
    let scale = a.scale.unwrap_or_else(|| default_scale(r.sp.name()));
    if !scale.is_finite() {
        return Err(CliError::Usage(format!("--scale must be finite, got {scale}")));
    }
    let zs = grid(lo, hi, n);
    let v = potential_from_w(&r.sp);
    let vs = zs
        .iter()
        .map(|&z| v.eval(z))
        .collect::<Result<Vec<_>, _>>()?;

    let mut f = CurveFile::new("state");
    f.meta("system", r.sp.name());
    f.meta("W", r.sp.w_expr().to_string());
    f.meta("range", format!("{}:{}", num(lo), num(hi)));
    f.meta("points", n.to_string());
    f.meta("scale", format!("{} (display only; density columns are unscaled)", num(scale)));
    if let Some(b) = a.squeeze {
        f.meta("squeeze", format!("B = {}, C = sqrt(2) alpha", num(b)));
    }
    let mut columns = Vec::new();
    let cfg = QuadConfig::relative(1e-12);
    for &alpha in &a.alpha {
        let psi = build_state(&r.sp, alpha, a.squeeze)?;
        let density = zs
            .iter()
            .map(|&z| psi.density(z))
            .collect::<Result<Vec<_>, _>>()?;
        let dom = psi.domain();
        let inside = adaptive_quad_with(
            |z| psi.density(z).unwrap_or(f64::NAN),
            lo.max(dom.lo),
            hi.min(dom.hi).max(lo.max(dom.lo)),
            &cfg,
        );
        f.meta(
            &format!("state alpha={}", num(alpha)),
            format!(
                "norm_constant {}, domain {}, mass in range {}",
                num(psi.norm_constant()),
                psi.domain(),
                num(inside.value)
            ),
        );
        let scaled = density.iter().map(|d| scale * d).collect();
        columns.push((format!("density_alpha={}", num(alpha)), density));
        columns.push((format!("scaled_density_alpha={}", num(alpha)), scaled));
    }
    let mut args = vec!["state".to_owned(), r.arg];
    let alphas: Vec<String> = a.alpha.iter().map(|&x| num(x)).collect();
    args.push(format!("--alpha={}", alphas.join(",")));
    args.push(format!("--scale={}", num(scale)));
    if let Some(b) = a.squeeze {
        args.push(format!("--squeeze={}", num(b)));
    }
    sampling_args(lo, hi, n, &mut args);
    common_args(global, &mut args);
    f.reproduce(&args);
    f.numbers("z", zs);
    f.numbers("V", vs);
    for (name, values) in columns {
        f.numbers(name, values);
    }
    Ok(f)
}

pub fn spectrum(global: &Global, a: &SpectrumArgs) -> Result<CurveFile, CliError> {
    reject(global, "spectrum", true, true)?;
    let table = linear_spectrum(a.count).map_err(|e| match e {
        susyqm::airy::AiryError::EmptySpectrum => CliError::Usage(e.to_string()),
        other => CliError::Numerical(other.to_string()),
    })?;
    let mut f = CurveFile::new("spectrum");
    f.meta("potential", "|z|");
    f.meta("count", a.count.to_string());
    let mut args = vec!["spectrum".to_owned(), format!("--count={}", a.count)];
    common_args(global, &mut args);
    f.reproduce(&args);
    let e = table.entries();
    f.integers("n", e.iter().map(|e| e.n as i64).collect());
    f.numbers("lambda", e.iter().map(|e| e.lambda).collect());
    f.numbers("Lambda", e.iter().map(|e| e.shifted).collect());
    f.text("parity", e.iter().map(|e| e.parity.to_string()).collect());
    f.text("source", e.iter().map(|e| e.source.to_string()).collect());
    Ok(f)
}

struct Check {
    name: String,
    value: f64,
    tolerance: String,
    pass: bool,
}

fn grid_max<F: Fn(f64) -> f64>(psi: &WaveFunction, f: F) -> f64 {
    let d = psi.domain();
    grid(d.lo, d.hi, 2001).into_iter().map(f).fold(0.0, f64::max)
}

pub fn verify(global: &Global, a: &VerifyArgs) -> Result<CurveFile, CliError> {
    reject(global, "verify", false, true)?;
    let r = resolve(&a.source)?;
    let sp = &r.sp;
    let residual_tol = global.tol.unwrap_or(RESIDUAL_TOL);
    let mut checks = Vec::new();
    let mut push = |name: String, value: f64, tolerance: String, pass: bool| {
        checks.push(Check { name, value, tolerance, pass })
    };

    let ground = ground_state(sp)?;
    let norm2 = ground.norm_squared()?;
    push("ground norm".into(), norm2, format!("1 +- {NORM_TOL:e}"), (norm2 - 1.0).abs() <= NORM_TOL);
    let (_, peak) = ground.peak();
    let d = ground.domain();
    let edge = ground.density(d.lo)?.max(ground.density(d.hi)?) / peak;
    push(format!("edge density / peak on {d}"), edge, "<= 1e-12".into(), edge <= 1e-12);
    let residual = schrodinger_residual_with(&ground, &potential_from_w(sp), 0.0, &ResidualConfig::default())?;
    push("zero-energy residual".into(), residual, format!("<= {residual_tol:e}"), residual <= residual_tol);

    match sp.name() {
        "double-well" => {
            let n0 = ground.norm_constant();
            push("norm_constant".into(), n0, "2.0410 +- 5e-3".into(), (n0 - 2.0410).abs() <= 5e-3);
            let maxima = ground.density_maxima();
            let far = maxima.iter().map(|(z, _)| (z.abs() - 1.0).abs()).fold(0.0, f64::max);
            push(
                format!("ground maxima at +-1 ({} found)", maxima.len()),
                far,
                "<= 1e-3".into(),
                maxima.len() == 2 && far <= 1e-3,
            );
        }
        "linear-airy" => {
            let l0 = linear_ground_energy();
            push("lambda0".into(), l0, "1.0188 +- 1e-3".into(), (l0 - 1.0188).abs() <= 1e-3);
        }
        _ => {}
    }

    for alpha in [0.0, 0.5, 2.0] {
        let psi = match coherent_state(sp, Complex64::new(alpha, 0.0)) {
            Ok(psi) => psi,
            Err(SusyError::NonNormalizable { .. }) if alpha != 0.0 => {
                push(format!("alpha={} rejected as non-normalizable", num(alpha)), 1.0, "-".into(), true);
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        let op = apply_annihilation(sp, &psi);
        let psi_peak = grid_max(&psi, |z| psi.eval(z).map_or(f64::NAN, |v| v.norm()));
        let worst = grid_max(&psi, |z| match (op(z), psi.eval(z)) {
            (Ok(av), Ok(v)) => (av - alpha * v).norm(),
            _ => f64::INFINITY,
        }) / psi_peak;
        push(format!("|A psi - alpha psi| / peak, alpha={}", num(alpha)), worst, format!("<= {EIGEN_TOL:e}"), worst <= EIGEN_TOL);
        let m = moments(&psi, sp)?;
        push(
            format!("saturation ratio, alpha={}", num(alpha)),
            m.saturation_ratio,
            format!(">= 1 - {UNCERTAINTY_SLACK:e}"),
            m.saturation_ratio >= 1.0 - UNCERTAINTY_SLACK,
        );
        if sp.name() == "susy-sho" {
            push(
                format!("susy-sho saturation, alpha={}", num(alpha)),
                m.saturation_ratio,
                "1 +- 1e-6".into(),
                (m.saturation_ratio - 1.0).abs() <= 1e-6,
            );
        }
    }

    let failed = checks.iter().filter(|c| !c.pass).count();
    let mut f = CurveFile::new("verify");
    f.meta("system", sp.name());
    f.meta("W", sp.w_expr().to_string());
    f.meta("norm_constant", num(ground.norm_constant()));
    f.meta("result", if failed == 0 { "PASS".to_owned() } else { format!("FAIL ({failed} of {})", checks.len()) });
    let mut args = vec!["verify".to_owned(), r.arg];
    common_args(global, &mut args);
    f.reproduce(&args);
    f.text("check", checks.iter().map(|c| c.name.clone()).collect());
    f.numbers("value", checks.iter().map(|c| c.value).collect());
    f.text("tolerance", checks.iter().map(|c| c.tolerance.clone()).collect());
    f.text("status", checks.iter().map(|c| if c.pass { "PASS" } else { "FAIL" }.to_owned()).collect());
    if failed == 0 {
        Ok(f)
    } else {
        Err(CliError::Verification(f))
    }
}

pub fn natural(global: &Global, a: &NaturalArgs) -> Result<CurveFile, CliError> {
    reject(global, "natural", false, true)?;
    let preset = a.preset.unwrap_or(Preset::Oscillator);
    let mut prob = match preset {
        Preset::Oscillator => NaturalVariableProblem::oscillator(),
        Preset::Linear => NaturalVariableProblem::linear(),
    };
    if let Some(src) = &a.expr {
        prob.potential = parse_with(src, &catalog_constants()).map_err(|e| CliError::Usage(e.to_string()))?;
    }
    prob.energy = a.energy.unwrap_or(prob.energy);
    prob.omega = a.omega.unwrap_or(prob.omega);
    prob.x_max = a.x_max.unwrap_or(prob.x_max);
    prob.mass_factor = a.mass_factor.unwrap_or(prob.mass_factor);
    let tol = global.tol.unwrap_or(SMOOTHNESS_TOL);
    let sol = natural_variable_solve_with(&prob, a.steps, tol)?;
    let d = sol.diagnostic;

    let mut f = CurveFile::new("natural");
    f.meta("V", prob.potential.to_string());
    f.meta("energy", num(prob.energy));
    f.meta("omega", num(prob.omega));
    f.meta("x_max", num(prob.x_max));
    f.meta("mass_factor", num(prob.mass_factor));
    f.meta("steps", a.steps.to_string());
    f.meta("turning_point", num(sol.turning_point));
    f.meta("diagnostic", if d.singular { "singular" } else { "smooth" });
    f.meta(
        "diagnostic detail",
        format!(
            "max slope jump of dX/dx {} at x = {} (tolerance {})",
            num(d.max_jump),
            num(d.location),
            num(d.tolerance)
        ),
    );
    let mut args = vec![
        "natural".to_owned(),
        format!("--expr={}", prob.potential),
        format!("--energy={}", num(prob.energy)),
        format!("--omega={}", num(prob.omega)),
        format!("--x-max={}", num(prob.x_max)),
        format!("--mass-factor={}", num(prob.mass_factor)),
        format!("--steps={}", a.steps),
    ];
    common_args(global, &mut args);
    f.reproduce(&args);
    f.numbers("x", sol.x);
    f.numbers("X", sol.big_x);
    f.numbers("dX/dx", sol.integrand);
    Ok(f)
}
