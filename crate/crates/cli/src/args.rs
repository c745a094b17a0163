use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "susyqm", version, about = "Supersymmetric quantum systems from a superpotential W(z)")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Write output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<std::path::PathBuf>,
    /// Emit a single JSON document instead of CSV.
    #[arg(long, global = true)]
    pub json: bool,
    /// Tolerance override (residual check for `verify`, kink threshold for `natural`).
    #[arg(long, global = true, value_name = "T")]
    pub tol: Option<f64>,
    /// Number of grid points.
    #[arg(long, global = true, value_name = "N")]
    pub points: Option<usize>,
    /// Sampling interval, e.g. `--range -3:4`.
    #[arg(long, global = true, value_name = "A:B", allow_hyphen_values = true, value_parser = parse_range)]
    pub range: Option<(f64, f64)>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample the partner potential V = W'^2 - W''.
    Potential(SystemArgs),
    /// Sample densities of ground, coherent or squeezed states.
    State(StateArgs),
    /// Eigenvalues of -d^2/dz^2 + |z| from Airy zeros.
    Spectrum(SpectrumArgs),
    /// Run the invariant checks for one system.
    Verify(VerifyArgs),
    /// Integrate the natural-variable equation out to the turning point.
    Natural(NaturalArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Catalog system: volcano, plugged-volcano (plug-volcano), double-well, susy-sho, linear-airy.
    #[arg(long)]
    pub system: Option<String>,
    /// Superpotential W(z) as an expression; `lambda0` is predefined.
    #[arg(long = "expr", value_name = "W", allow_hyphen_values = true)]
    pub expr: Option<String>,
}

#[derive(Debug, Args)]
pub struct SystemArgs {
    #[command(flatten)]
    pub source: Source,
}

#[derive(Debug, Args)]
pub struct StateArgs {
    #[command(flatten)]
    pub source: Source,
    /// Comma-separated real coherent eigenvalues; 0 is the ground state.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0")]
    pub alpha: Vec<f64>,
    /// Display factor for the scaled density columns (default 5 for double-well,
    /// 15 for linear-airy, 1 otherwise).
    #[arg(long)]
    pub scale: Option<f64>,
    /// Build squeezed states with this B and C = sqrt(2) alpha instead of coherent states.
    #[arg(long, value_name = "B")]
    pub squeeze: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    /// Number of eigenvalues.
    #[arg(long, default_value_t = 7)]
    pub count: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub source: Source,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// V = x^2, E = 1, omega = 2
    Oscillator,
    /// V = |x|, E = 1, omega = pi/2
    Linear,
}

#[derive(Debug, Args)]
pub struct NaturalArgs {
    /// Potential V(x); defaults to the preset's potential.
    #[arg(long = "expr", value_name = "V", allow_hyphen_values = true)]
    pub expr: Option<String>,
    /// Starting values for E, omega, X_max and the mass factor.
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,
    #[arg(long, allow_hyphen_values = true)]
    pub energy: Option<f64>,
    #[arg(long)]
    pub omega: Option<f64>,
    #[arg(long = "x-max")]
    pub x_max: Option<f64>,
    /// The sqrt(m/2) factor; 0.5 for H = p^2 + V.
    #[arg(long = "mass-factor")]
    pub mass_factor: Option<f64>,
    #[arg(long, default_value_t = 1000)]
    pub steps: usize,
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| format!("expected A:B, got `{s}`"))?;
    let a: f64 = a.trim().parse().map_err(|_| format!("bad range start `{a}`"))?;
    let b: f64 = b.trim().parse().map_err(|_| format!("bad range end `{b}`"))?;
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(format!("range must satisfy A < B, got {a}:{b}"));
    }
    Ok((a, b))
}
