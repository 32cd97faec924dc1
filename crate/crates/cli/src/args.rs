use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "lcauchy", version, about = "Experiments on Cauchy sets of finite and conical Lorentzian spaces")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Global {
    /// TOML file of flag defaults: top-level keys for global flags, tables
    /// named after the subcommand (e.g. `[dj-axioms]`) for its flags.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    /// Seed for all randomized generation.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Absolute tolerance for real-valued comparisons.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Directory for the JSON report and artifacts. Without it the report is
    /// printed to stdout and artifacts are not written.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

impl Default for Global {
    fn default() -> Self {
        Global { config: None, seed: 0, tol: 1e-9, out: None }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Triangulated hyperbolic domains.
    Mesh {
        #[command(subcommand)]
        action: MeshAction,
    },
    /// Finite Lorentzian spaces.
    Space {
        #[command(subcommand)]
        action: SpaceAction,
    },
    /// The maximal causal relation.
    Jd {
        #[command(subcommand)]
        action: JdAction,
    },
    /// Radius graphs over a mesh.
    Graph {
        #[command(subcommand)]
        action: GraphAction,
    },
    /// The d_J metric.
    Dj {
        #[command(subcommand)]
        action: DjAction,
    },
    /// Causal curves against Cauchy graphs.
    Curves {
        #[command(subcommand)]
        action: CurvesAction,
    },
    /// Completeness and compactness conditions.
    Complete {
        #[command(subcommand)]
        action: CompleteAction,
    },
    /// The ln(f/g) time function on finite spaces.
    Timefn {
        #[command(subcommand)]
        action: TimefnAction,
    },
    /// Epsilon-nets of d_J balls.
    Blaschke {
        #[command(subcommand)]
        action: BlaschkeAction,
    },
    /// Summarize JSON reports as a table.
    Report(ReportArgs),
}

impl Command {
    /// Subcommand path joined with `-`, e.g. `dj-axioms`.
    pub fn slug(&self) -> &'static str {
        match self {
            Command::Mesh { .. } => "mesh-build",
            Command::Space { .. } => "space-check",
            Command::Jd { .. } => "jd-compute",
            Command::Graph { .. } => "graph-validate",
            Command::Dj { action } => match action {
                DjAction::Pair(_) => "dj-pair",
                DjAction::Matrix(_) => "dj-matrix",
                DjAction::Axioms(_) => "dj-axioms",
            },
            Command::Curves { .. } => "curves-crossings",
            Command::Complete { action } => match action {
                CompleteAction::Strip(_) => "complete-strip",
                CompleteAction::Cone(_) => "complete-cone",
                CompleteAction::Finite(_) => "complete-finite",
            },
            Command::Timefn { action } => match action {
                TimefnAction::Build(_) => "timefn-build",
                TimefnAction::Levels(_) => "timefn-levels",
            },
            Command::Blaschke { .. } => "blaschke-net",
            Command::Report(_) => "report",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum MeshAction {
    Build(MeshBuildArgs),
}

#[derive(Debug, Subcommand)]
pub enum SpaceAction {
    Check(SpaceCheckArgs),
}

#[derive(Debug, Subcommand)]
pub enum JdAction {
    Compute(JdArgs),
}

#[derive(Debug, Subcommand)]
pub enum GraphAction {
    Validate(GraphValidateArgs),
}

#[derive(Debug, Subcommand)]
pub enum DjAction {
    Pair(DjPairArgs),
    Matrix(DjMatrixArgs),
    Axioms(DjAxiomsArgs),
}

#[derive(Debug, Subcommand)]
pub enum CurvesAction {
    Crossings(CrossingsArgs),
}

#[derive(Debug, Subcommand)]
pub enum CompleteAction {
    Strip(CompleteStripArgs),
    Cone(CompleteConeArgs),
    Finite(CompleteFiniteArgs),
}

#[derive(Debug, Subcommand)]
pub enum TimefnAction {
    Build(TimefnBuildArgs),
    Levels(TimefnLevelsArgs),
}

#[derive(Debug, Subcommand)]
pub enum BlaschkeAction {
    Net(NetArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MeshKind {
    Disk,
    Annulus,
}

/// A mesh file, or a generated geodesic disk.
#[derive(Debug, Clone, Args, Serialize)]
pub struct MeshArgs {
    /// Mesh JSON file; a generated disk is used when absent.
    #[arg(long)]
    pub mesh: Option<PathBuf>,
    /// Radius of the generated disk.
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    /// Resolution of the generated disk.
    #[arg(long, default_value_t = 4)]
    pub resolution: usize,
}

impl MeshArgs {
    pub fn disk(resolution: usize) -> Self {
        MeshArgs { mesh: None, radius: 1.0, resolution }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct MeshBuildArgs {
    #[arg(long, value_enum, default_value_t = MeshKind::Disk)]
    pub kind: MeshKind,
    /// Outer geodesic radius.
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    /// Inner radius of an annulus.
    #[arg(long, default_value_t = 0.3)]
    pub inner: f64,
    #[arg(long, default_value_t = 4)]
    pub resolution: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SpaceCheckArgs {
    /// Space file (.json or .csv).
    #[arg(long)]
    pub space: PathBuf,
    /// Skip the antisymmetry (causality) requirement.
    #[arg(long)]
    pub allow_acausal: bool,
    /// Also require that the distance distinguishes points.
    #[arg(long)]
    pub require_distinguishing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SliceModel {
    Strip,
    Minkowski,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct JdArgs {
    /// Space file; when absent, random samples of `--model` are used.
    #[arg(long, conflicts_with = "model")]
    pub space: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub model: Option<SliceModel>,
    /// Number of random samples.
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
    /// Points per sample.
    #[arg(long, default_value_t = 20)]
    pub points: usize,
    /// Minimum `||Δt| - |Δx||` between sample points.
    #[arg(long, default_value_t = 0.01)]
    pub null_gap: f64,
    /// Spacing of the probe grid.
    #[arg(long, default_value_t = 0.05)]
    pub probe_step: f64,
    /// Append a duplicate of the first point to each sample and require
    /// that it is flagged as indistinguishable.
    #[arg(long)]
    pub duplicate: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Cauchy,
    Strong,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GraphValidateArgs {
    /// Graph JSON file.
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, value_enum, default_value_t = Mode::Cauchy)]
    pub mode: Mode,
    /// Lipschitz margin for strong validation.
    #[arg(long, default_value_t = 0.05)]
    pub margin: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PairModel {
    Strip,
    Minkowski,
    Cone,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DjPairArgs {
    #[arg(long, value_enum, default_value_t = PairModel::Strip)]
    pub model: PairModel,
    /// Time of the first slice.
    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<f64>,
    /// Time of the second slice.
    #[arg(long, allow_negative_numbers = true)]
    pub b: Option<f64>,
    /// Samples per slice.
    #[arg(long, default_value_t = 101)]
    pub samples: usize,
    #[arg(long, default_value_t = -1.0, allow_negative_numbers = true)]
    pub x_min: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub x_max: f64,
    /// First graph file (cone model).
    #[arg(long)]
    pub graph_a: Option<PathBuf>,
    /// Second graph file (cone model).
    #[arg(long)]
    pub graph_b: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct EnsembleArgs {
    #[command(flatten)]
    pub mesh: MeshArgs,
    /// Lipschitz margin of generated strong graphs.
    #[arg(long, default_value_t = 0.05)]
    pub margin: f64,
    /// Range of the random seed values of ln f.
    #[arg(long, default_value_t = -0.5, allow_negative_numbers = true)]
    pub log_min: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub log_max: f64,
    /// Seed values per generated graph.
    #[arg(long, default_value_t = 6)]
    pub seeds: usize,
}

impl EnsembleArgs {
    pub fn new(resolution: usize) -> Self {
        EnsembleArgs {
            mesh: MeshArgs::disk(resolution),
            margin: 0.05,
            log_min: -0.5,
            log_max: 1.0,
            seeds: 6,
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DjMatrixArgs {
    /// Graph files sharing one mesh; random strong graphs when absent.
    #[arg(long, num_args = 1..)]
    pub graphs: Vec<PathBuf>,
    /// Number of random graphs.
    #[arg(long, default_value_t = 8)]
    pub count: usize,
    #[command(flatten)]
    pub ensemble: EnsembleArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DjAxiomsArgs {
    #[arg(long, default_value_t = 50)]
    pub count: usize,
    /// Random triples for the triangle inequality.
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[command(flatten)]
    pub ensemble: EnsembleArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CrossingsArgs {
    #[arg(long, default_value_t = 100)]
    pub graphs: usize,
    #[arg(long, default_value_t = 100)]
    pub curves: usize,
    /// Lipschitz-violating graphs, each paired with its witness curve.
    #[arg(long, default_value_t = 20)]
    pub violations: usize,
    /// Timelike slack of generated curves.
    #[arg(long, default_value_t = 0.1)]
    pub eta: f64,
    /// Violation factor: the bumped pair has log slope `factor` (> 1).
    #[arg(long, default_value_t = 2.0)]
    pub factor: f64,
    #[command(flatten)]
    pub ensemble: EnsembleArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CompleteStripArgs {
    /// First index `j` of the sequence `t_j = 1/j`.
    #[arg(long, default_value_t = 2)]
    pub first: usize,
    #[arg(long, default_value_t = 64)]
    pub last: usize,
    /// Samples per slice over `[-1, 1]`.
    #[arg(long, default_value_t = 21)]
    pub samples: usize,
    /// Cauchy threshold for the tail.
    #[arg(long, default_value_t = 0.05)]
    pub epsilon: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CompleteConeArgs {
    #[command(flatten)]
    pub mesh: MeshArgs,
    /// Terms of the generated graph sequences.
    #[arg(long, default_value_t = 32)]
    pub terms: usize,
    #[arg(long, default_value_t = 0.05)]
    pub epsilon: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CompleteFiniteArgs {
    #[arg(long)]
    pub space: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct TimefnBuildArgs {
    #[arg(long)]
    pub space: PathBuf,
    /// Comma-separated labels giving the enumeration order.
    #[arg(long, value_delimiter = ',')]
    pub enumeration: Vec<String>,
    /// Skip the distinguishing precondition.
    #[arg(long)]
    pub relaxed: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct TimefnLevelsArgs {
    /// Space file; random weighted posets when absent.
    #[arg(long)]
    pub space: Option<PathBuf>,
    /// Specific levels; every gap and value of τ when absent.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub levels: Vec<f64>,
    /// Number of random posets.
    #[arg(long, default_value_t = 200)]
    pub posets: usize,
    /// Largest poset size.
    #[arg(long, default_value_t = 50)]
    pub max_points: usize,
    #[arg(long, default_value_t = 0.15)]
    pub edge_probability: f64,
    #[arg(long)]
    pub relaxed: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct NetArgs {
    /// Radius of the constant center graph.
    #[arg(long, default_value_t = 1.0)]
    pub center: f64,
    #[arg(long, default_value_t = 0.5)]
    pub r: f64,
    #[arg(long, default_value_t = 0.05)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 500)]
    pub probes: usize,
    #[arg(long, default_value_t = 0.05)]
    pub margin: f64,
    #[command(flatten)]
    pub mesh: MeshArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ReportArgs {
    /// JSON reports to summarize.
    #[arg(required = true)]
    pub files: Vec<PathBuf>,
}
