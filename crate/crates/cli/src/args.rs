use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "sepsearch", version, about = "Separable-gate and Grover search: tables, spectra and checks")]
pub struct Cli {
    /// Print errors as a JSON object on stderr.
    #[arg(long, global = true)]
    pub json_errors: bool,
    /// JSON file whose keys mirror the long flag names; command-line flags win.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<String>,
    /// Write output here instead of stdout.
    #[arg(long, short, global = true, value_name = "PATH")]
    pub output: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Iteration counts and error rates for Grover and the separable circuit.
    Table(TableArgs),
    /// Samples of φ(ω) on a uniform grid.
    Phi(PhiArgs),
    /// One search run with the reduced or full-register engine.
    Simulate(SimulateArgs),
    /// Eigen-structure of the one-solution step operator (JSON).
    Spectrum(SpectrumArgs),
    /// Binomial-average lemma, moment bounds and Stirling checks (JSON).
    Lemma(LemmaArgs),
    /// Gap scans and operator identities for the adiabatic families (JSON).
    Aqc(AqcArgs),
    /// Adiabatic time evolution (JSON).
    Evolve(EvolveArgs),
    /// Run-time comparison under a per-gate cost model.
    Cost(CostArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Table(_) => "table",
            Command::Phi(_) => "phi",
            Command::Simulate(_) => "simulate",
            Command::Spectrum(_) => "spectrum",
            Command::Lemma(_) => "lemma",
            Command::Aqc(_) => "aqc",
            Command::Evolve(_) => "evolve",
            Command::Cost(_) => "cost",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args, Serialize)]
pub struct TableArgs {
    /// Qubit counts.
    #[arg(long = "n", value_delimiter = ',', default_values_t = [10, 20, 30, 40])]
    pub n: Vec<usize>,
    /// Oracle phases; when given, only these columns are produced.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub omega: Vec<String>,
    /// Only Grover rows.
    #[arg(long, conflicts_with_all = ["omega", "with_grover"])]
    pub grover_only: bool,
    /// Keep the Grover row alongside explicit --omega columns.
    #[arg(long)]
    pub with_grover: bool,
    /// Error rates to 2 significant figures and no success column, for
    /// comparison against the published values.
    #[arg(long)]
    pub paper_format: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args, Serialize)]
pub struct PhiArgs {
    #[arg(long = "n")]
    pub n: usize,
    #[arg(long, default_value_t = 512)]
    pub samples: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Reduced,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Realisation {
    Direct,
    Kickback,
}

#[derive(Debug, Args, Serialize)]
pub struct SimulateArgs {
    #[arg(long = "n")]
    pub n: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub omega: String,
    #[arg(long, value_enum, default_value_t = Engine::Reduced)]
    pub engine: Engine,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub solutions: u8,
    /// Marked item.
    #[arg(long, default_value_t = 0)]
    pub j: u64,
    /// Second marked item (two solutions).
    #[arg(long)]
    pub j2: Option<u64>,
    /// Overrides the closed-form iteration count.
    #[arg(long)]
    pub iterations: Option<u64>,
    /// Oracle realisation for the full engine.
    #[arg(long, value_enum, default_value_t = Realisation::Direct)]
    pub oracle: Realisation,
    /// Qubit cap of the full engine.
    #[arg(long, default_value_t = sepsearch_core::statevector::DEFAULT_MAX_QUBITS)]
    pub max_qubits: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args, Serialize)]
pub struct SpectrumArgs {
    #[arg(long = "n")]
    pub n: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub omega: String,
    /// Also evaluate the secular-equation residuals.
    #[arg(long)]
    pub secular: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct LemmaArgs {
    /// Sample sizes for the binomial mean and the cot sums.
    #[arg(long = "n", value_delimiter = ',', default_values_t = [16, 64, 256, 1024, 4096])]
    pub n: Vec<usize>,
    /// Pole parameters r ∈ (0, 2π) of the cot sums.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = ["pi/2".to_string(), "pi".to_string(), "3pi/2".to_string()])]
    pub r: Vec<String>,
    /// Moment orders.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, default_values_t = [-3, -2, -1, 0, 1, 2, 3])]
    pub q: Vec<i32>,
    /// Sample size of the moment sums.
    #[arg(long, default_value_t = 4096)]
    pub moment_n: usize,
    #[arg(long, value_delimiter = ',', default_values_t = [1, 10, 100, 1000, 10000])]
    pub stirling_n: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Roland,
    Farhi,
}

impl From<Kind> for sepsearch_core::aqc::AqcKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Roland => Self::Roland,
            Kind::Farhi => Self::Farhi,
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct AqcArgs {
    #[arg(long, value_enum, default_value_t = Kind::Roland)]
    pub kind: Kind,
    #[arg(long = "n", value_delimiter = ',', default_values_t = [10, 20, 30, 40])]
    pub n: Vec<usize>,
    /// Grid size of the gap scan.
    #[arg(long, default_value_t = sepsearch_core::aqc::IDENTITY_SCAN_RESOLUTION)]
    pub resolution: usize,
    /// Phase used for the operator identities.
    #[arg(long, default_value = "pi/2", allow_hyphen_values = true)]
    pub omega: String,
    /// Include the sampled gap curve.
    #[arg(long)]
    pub samples: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScheduleArg {
    Linear,
    RolandOptimal,
}

#[derive(Debug, Args, Serialize)]
pub struct EvolveArgs {
    #[arg(long, value_enum, default_value_t = Kind::Roland)]
    pub kind: Kind,
    #[arg(long = "n")]
    pub n: usize,
    /// Total time T.
    #[arg(long)]
    pub time: f64,
    #[arg(long, value_enum, default_value_t = ScheduleArg::RolandOptimal)]
    pub schedule: ScheduleArg,
    /// Record the state at the Grover times t_m.
    #[arg(long)]
    pub grover_checkpoints: bool,
    /// Extra checkpoint times.
    #[arg(long, value_delimiter = ',')]
    pub checkpoints: Vec<f64>,
    /// Bound on ‖H‖·Δt.
    #[arg(long, default_value_t = sepsearch_core::aqc::DEFAULT_MAX_STEP_NORM)]
    pub max_step_norm: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct CostArgs {
    #[arg(long = "n")]
    pub n: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub omega: String,
    #[arg(long, default_value_t = 1.0)]
    pub t_single: f64,
    /// Defaults to n·t_single.
    #[arg(long)]
    pub t_multi: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub t_oracle: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}
