use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug, Clone)]
#[command(
    name = "cavity",
    version,
    about = "Fields in a rigid uniformly accelerated cavity: spectra, Bogoliubov data, unitarity diagnostics"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Inertial or accelerated-frame eigenfrequencies and normalisations.
    Spectrum(SpectrumArgs),
    /// Bogoliubov coefficients for the onset of uniform acceleration.
    Bogoliubov(BogoliubovArgs),
    /// Bogoliubov coefficients accumulated along an acceleration profile.
    Trajectory(TrajectoryArgs),
    /// Hilbert-Schmidt sums F(M), G(M) and transverse-dimension verdicts.
    Unitarity(UnitarityArgs),
    /// Large-mass limits of M^2 F and M^2 G by 2-D quadrature.
    Asymptotics(AsymptoticsArgs),
    /// |A_hat| against M for chosen Dirac mode pairs, with log-log slopes.
    Figure2(Figure2Args),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Spectrum(_) => "spectrum",
            Command::Bogoliubov(_) => "bogoliubov",
            Command::Trajectory(_) => "trajectory",
            Command::Unitarity(_) => "unitarity",
            Command::Asymptotics(_) => "asymptotics",
            Command::Figure2(_) => "figure2",
        }
    }

    pub fn output(&self) -> &OutputArgs {
        match self {
            Command::Spectrum(a) => &a.output,
            Command::Bogoliubov(a) => &a.output,
            Command::Trajectory(a) => &a.output,
            Command::Unitarity(a) => &a.output,
            Command::Asymptotics(a) => &a.output,
            Command::Figure2(a) => &a.output,
        }
    }
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct OutputArgs {
    /// Print JSON (the default).
    #[arg(long, conflicts_with = "csv")]
    pub json: bool,
    /// Print the main table as CSV.
    #[arg(long)]
    pub csv: bool,
    /// Numerical tolerance; overrides CAVITY_TOL.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Also write every table, the JSON report and a manifest into this directory.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FieldArg {
    ScalarDirichlet,
    ScalarNeumann,
    DiracMit,
    Maxwell,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PolArg {
    #[value(name = "I")]
    I,
    #[value(name = "II")]
    II,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BackendArg {
    Auto,
    Ode,
    Bessel,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct FieldArgs {
    #[arg(long, value_enum)]
    pub field: FieldArg,
    /// Dimensionless mass mu L (ignored for maxwell, where it is the transverse wavenumber).
    #[arg(long = "M")]
    pub mass: Option<f64>,
    /// Maxwell polarisation class.
    #[arg(long, value_enum)]
    pub pol: Option<PolArg>,
    /// Maxwell transverse index along x.
    #[arg(long)]
    pub m: Option<u32>,
    /// Maxwell transverse index along y.
    #[arg(long)]
    pub n: Option<u32>,
    /// Transverse side along x in units of L.
    #[arg(long = "Lx", default_value_t = 1.0)]
    pub lx: f64,
    /// Transverse side along y in units of L.
    #[arg(long = "Ly", default_value_t = 1.0)]
    pub ly: f64,
    /// Accelerated-mode backend.
    #[arg(long, value_enum, default_value_t = BackendArg::Auto)]
    pub backend: BackendArg,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FrameArg {
    Minkowski,
    Rindler,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long, value_enum, default_value_t = FrameArg::Minkowski)]
    pub frame: FrameArg,
    /// Dimensionless acceleration h = aL (accelerated frame only).
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub h: f64,
    /// Number of modes (per frequency sign for Dirac).
    #[arg(long, default_value_t = 5)]
    pub count: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MethodArg {
    Perturbative,
    Quadrature,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DirectionArg {
    Right,
    Left,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct BogoliubovArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long, value_enum, default_value_t = MethodArg::Perturbative)]
    pub method: MethodArg,
    /// Dimensionless acceleration h = aL; `--direction left` flips its sign.
    #[arg(long, allow_negative_numbers = true)]
    pub h: f64,
    /// Truncation size (even for Dirac).
    #[arg(long, default_value_t = 6)]
    pub size: usize,
    #[arg(long, value_enum, default_value_t = DirectionArg::Right)]
    pub direction: DirectionArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EvolutionArg {
    /// Segment composition for segment files, Fourier formula for sampled files.
    Auto,
    Segments,
    Fourier,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct TrajectoryArgs {
    /// Profile JSON: {"segments":[{"duration_over_L":..,"hL":..}]} or {"tau_over_L":[..],"aL":[..]}.
    #[arg(long)]
    pub profile: std::path::PathBuf,
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long, default_value_t = 6)]
    pub size: usize,
    #[arg(long, value_enum, default_value_t = EvolutionArg::Auto)]
    pub method: EvolutionArg,
    /// Per-segment transformations used by the composition.
    #[arg(long, value_enum, default_value_t = MethodArg::Quadrature)]
    pub ingredients: MethodArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SumFamilyArg {
    Dirichlet,
    Neumann,
    Dirac,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CountingArg {
    /// Indices >= 0, not all zero.
    Nonnegative,
    /// Indices >= 1.
    Positive,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct UnitarityArgs {
    #[arg(long, value_enum)]
    pub bc: SumFamilyArg,
    /// Single dimensionless mass.
    #[arg(long = "M", conflicts_with = "scan")]
    pub mass: Option<f64>,
    /// Mass scan: start stop step (inclusive).
    #[arg(long, num_args = 3, value_names = ["START", "STOP", "STEP"])]
    pub scan: Option<Vec<f64>>,
    /// Mode cutoff of the mass sums (default grows with M).
    #[arg(long)]
    pub cutoff: Option<usize>,
    /// Spatial dimension for the transverse-mode sum (2 or more).
    #[arg(long)]
    pub transverse_dim: Option<usize>,
    /// Bare mass mu0 L for the transverse sum.
    #[arg(long, default_value_t = 0.0)]
    pub mu0: f64,
    /// Transverse side lengths in units of L (default all 1).
    #[arg(long, value_delimiter = ',')]
    pub lengths: Option<Vec<f64>>,
    /// Largest transverse lattice index.
    #[arg(long)]
    pub transverse_cutoff: Option<usize>,
    /// Transverse lattice counting (default: positive for neumann, nonnegative otherwise).
    #[arg(long, value_enum)]
    pub counting: Option<CountingArg>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct AsymptoticsArgs {
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Figure2Args {
    #[arg(long = "M-min", default_value_t = 10.0)]
    pub m_min: f64,
    #[arg(long = "M-max", default_value_t = 100.0)]
    pub m_max: f64,
    /// Log-spaced mass points.
    #[arg(long, default_value_t = 19)]
    pub points: usize,
    /// Dirac label pairs `k:l`, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = ["0:1".to_string(), "0:-3".to_string(), "0:-2".to_string()], allow_hyphen_values = true)]
    pub pairs: Vec<String>,
    #[command(flatten)]
    pub output: OutputArgs,
}
