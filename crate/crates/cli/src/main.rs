//! Command-line frontend: cluster one configuration, sweep the grid,
//! export the associated graph, generate synthetic workflows, and benchmark
//! pipeline runs.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use flowgroup::metrics::{Cutoff, MetricKind};
use flowgroup::paths::PathMode;
use flowgroup::pipeline::{
    run_pipeline_with, AlgorithmKind, ClusterConfig, PipelineError, PipelineOptions,
    SymmetrizationKind, DEFAULT_CUTOFFS,
};
use flowgroup::synth::{generate_workflow, SyntheticSpec};
use flowgroup::weights::{build_graph, WeightingKind};
use flowgroup::workflow::{parse_workflow, serialize_workflow, Workflow};
use flowgroup::{Config, Digraph};
use flowgroup_cli::{dot, output};

#[derive(Parser)]
#[command(name = "flowgroup", version, about = "Group closely related tool instances in workflows")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cluster a workflow with one configuration and emit the report.
    Cluster(ClusterArgs),
    /// Run a grid of configurations and summarize each.
    Sweep(SweepArgs),
    /// Export the workflow's associated weighted graph.
    ExportGraph(ExportArgs),
    /// Generate a synthetic workflow with planted groups.
    Generate(GenerateArgs),
    /// Measure pipeline wall time over repeated runs.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum WeightingArg {
    Data,
    Reciprocal,
    Unit,
}

impl From<WeightingArg> for WeightingKind {
    fn from(value: WeightingArg) -> Self {
        match value {
            WeightingArg::Data => WeightingKind::DataDriven,
            WeightingArg::Reciprocal => WeightingKind::ReciprocalDataDriven,
            WeightingArg::Unit => WeightingKind::Unit,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SymmetrizationArg {
    None,
    Naive,
    Bibliometric,
}

impl From<SymmetrizationArg> for SymmetrizationKind {
    fn from(value: SymmetrizationArg) -> Self {
        match value {
            SymmetrizationArg::None => SymmetrizationKind::None,
            SymmetrizationArg::Naive => SymmetrizationKind::Naive,
            SymmetrizationArg::Bibliometric => SymmetrizationKind::Bibliometric,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgorithmArg {
    Betweenness,
    Agglomerative,
    Spectral,
}

impl From<AlgorithmArg> for AlgorithmKind {
    fn from(value: AlgorithmArg) -> Self {
        match value {
            AlgorithmArg::Betweenness => AlgorithmKind::EdgeBetweenness,
            AlgorithmArg::Agglomerative => AlgorithmKind::Agglomerative,
            AlgorithmArg::Spectral => AlgorithmKind::SpectralBisection,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    Density,
    GlobalCc,
    LocalCc,
    Modularity,
}

impl From<MetricArg> for MetricKind {
    fn from(value: MetricArg) -> Self {
        match value {
            MetricArg::Density => MetricKind::ClusterDensity,
            MetricArg::GlobalCc => MetricKind::GlobalClusteringCoefficient,
            MetricArg::LocalCc => MetricKind::LocalClusteringCoefficient,
            MetricArg::Modularity => MetricKind::Modularity,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepFormatArg {
    Table,
    Json,
}

#[derive(Args)]
struct ConfigArgs {
    /// Edge weighting of the associated graph.
    #[arg(long, value_enum, default_value = "data")]
    weighting: WeightingArg,
    /// Symmetrization applied before clustering.
    #[arg(long, value_enum, default_value = "none")]
    symmetrization: SymmetrizationArg,
    /// Clustering algorithm.
    #[arg(long, value_enum, default_value = "betweenness")]
    algorithm: AlgorithmArg,
    /// Stopping-criterion metric.
    #[arg(long, value_enum, default_value = "modularity")]
    metric: MetricArg,
    /// Metric cutoff in [0, 1]; clusters scoring below it are re-clustered.
    #[arg(long, default_value_t = 0.2)]
    cutoff: f64,
    /// Measure shortest paths in hops instead of 1/weight lengths.
    #[arg(long)]
    hop_paths: bool,
}

impl ConfigArgs {
    fn to_config(&self) -> Result<Config, CliError> {
        let cutoff = Cutoff::new(self.cutoff)
            .map_err(|e| CliError::Input(format!("invalid cutoff: {e}")))?;
        Ok(ClusterConfig {
            weighting: self.weighting.into(),
            symmetrization: self.symmetrization.into(),
            algorithm: self.algorithm.into(),
            metric: self.metric.into(),
            cutoff,
        })
    }

    fn options(&self) -> PipelineOptions {
        PipelineOptions {
            path_mode: if self.hop_paths { PathMode::HopCount } else { PathMode::Weighted },
        }
    }
}

#[derive(Args)]
struct ClusterArgs {
    /// Workflow JSON document.
    workflow: PathBuf,
    #[command(flatten)]
    config: ConfigArgs,
    /// Output format: report JSON or annotated DOT.
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
    /// Write to a file instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Workflow JSON document.
    workflow: PathBuf,
    /// Weightings to include (default: all).
    #[arg(long, value_enum, value_delimiter = ',')]
    weightings: Vec<WeightingArg>,
    /// Symmetrizations to include (default: all).
    #[arg(long, value_enum, value_delimiter = ',')]
    symmetrizations: Vec<SymmetrizationArg>,
    /// Algorithms to include (default: all).
    #[arg(long, value_enum, value_delimiter = ',')]
    algorithms: Vec<AlgorithmArg>,
    /// Metrics to include (default: all).
    #[arg(long, value_enum, value_delimiter = ',')]
    metrics: Vec<MetricArg>,
    /// Cutoffs to include (default: 0.2, 0.4, 0.6, 0.8).
    #[arg(long, value_delimiter = ',')]
    cutoffs: Vec<f64>,
    /// Measure shortest paths in hops instead of 1/weight lengths.
    #[arg(long)]
    hop_paths: bool,
    /// Output format: summary table with timings, or timing-free JSON.
    #[arg(long, value_enum, default_value = "table")]
    format: SweepFormatArg,
    /// Write to a file instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ExportArgs {
    /// Workflow JSON document.
    workflow: PathBuf,
    /// Edge weighting of the exported graph.
    #[arg(long, value_enum, default_value = "data")]
    weighting: WeightingArg,
    /// Output format.
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
    /// Write to a file instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct GenerateArgs {
    /// Number of planted groups.
    #[arg(long, default_value_t = 3)]
    groups: usize,
    /// Instances per group, either N or MIN..MAX.
    #[arg(long, default_value = "4", value_parser = parse_count_range)]
    instances_per_group: (usize, usize),
    /// Connection probability between instances of the same group.
    #[arg(long, default_value_t = 0.6)]
    intra_probability: f64,
    /// Connection probability between instances of different groups.
    #[arg(long, default_value_t = 0.02)]
    inter_probability: f64,
    /// RNG seed; identical seeds give byte-identical workflows.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write to a file instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Workflow JSON document.
    workflow: PathBuf,
    #[command(flatten)]
    config: ConfigArgs,
    /// Number of timed pipeline runs.
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
    repetitions: u32,
}

fn parse_count_range(raw: &str) -> Result<(usize, usize), String> {
    if let Some((lo, hi)) = raw.split_once("..") {
        let lo: usize = lo.trim().parse().map_err(|_| format!("bad range `{raw}`"))?;
        let hi: usize = hi.trim().parse().map_err(|_| format!("bad range `{raw}`"))?;
        Ok((lo, hi))
    } else {
        let n: usize = raw.trim().parse().map_err(|_| format!("bad count `{raw}`"))?;
        Ok((n, n))
    }
}

enum CliError {
    /// Unreadable or invalid input (exit 2).
    Input(String),
    /// Incompatible configuration (exit 3).
    Config(String),
    /// Anything unexpected (exit 1).
    Internal(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Config(_) => 3,
            CliError::Internal(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Config(m) | CliError::Internal(m) => m,
        }
    }
}

impl From<PipelineError> for CliError {
    fn from(error: PipelineError) -> Self {
        match error {
            PipelineError::IncompatibleConfig { .. } => CliError::Config(error.to_string()),
            other => CliError::Internal(other.to_string()),
        }
    }
}

fn load_workflow(path: &PathBuf) -> Result<Workflow, CliError> {
    let bytes = fs::read(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_workflow(&bytes).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn emit(output: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, content)
            .map_err(|e| CliError::Internal(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn cmd_cluster(args: &ClusterArgs) -> Result<(), CliError> {
    let workflow = load_workflow(&args.workflow)?;
    let config = args.config.to_config()?;
    let options = args.config.options();
    let report = run_pipeline_with(&workflow, &config, &options)?;
    let content = match args.format {
        FormatArg::Json => output::report_json(&report, args.config.hop_paths),
        FormatArg::Dot => {
            let graph: Digraph = build_graph(&workflow, config.weighting);
            dot::clustered_graph(&workflow.name, &graph, &report)
        }
    };
    emit(&args.output, &content)
}

fn cmd_sweep(args: &SweepArgs) -> Result<(), CliError> {
    let workflow = load_workflow(&args.workflow)?;
    let options = PipelineOptions {
        path_mode: if args.hop_paths { PathMode::HopCount } else { PathMode::Weighted },
    };

    let weightings: Vec<WeightingKind> = if args.weightings.is_empty() {
        WeightingKind::ALL.to_vec()
    } else {
        args.weightings.iter().map(|&w| w.into()).collect()
    };
    let symmetrizations: Vec<SymmetrizationKind> = if args.symmetrizations.is_empty() {
        SymmetrizationKind::ALL.to_vec()
    } else {
        args.symmetrizations.iter().map(|&s| s.into()).collect()
    };
    let algorithms: Vec<AlgorithmKind> = if args.algorithms.is_empty() {
        AlgorithmKind::ALL.to_vec()
    } else {
        args.algorithms.iter().map(|&a| a.into()).collect()
    };
    let metrics: Vec<MetricKind> = if args.metrics.is_empty() {
        MetricKind::ALL.to_vec()
    } else {
        args.metrics.iter().map(|&m| m.into()).collect()
    };
    let cutoffs: Vec<f64> =
        if args.cutoffs.is_empty() { DEFAULT_CUTOFFS.to_vec() } else { args.cutoffs.clone() };

    let mut configs: Vec<Config> = Vec::new();
    for &weighting in &weightings {
        for &symmetrization in &symmetrizations {
            for &algorithm in &algorithms {
                if symmetrization == SymmetrizationKind::None
                    && algorithm != AlgorithmKind::EdgeBetweenness
                {
                    continue;
                }
                for &metric in &metrics {
                    for &cutoff in &cutoffs {
                        let cutoff = Cutoff::new(cutoff)
                            .map_err(|e| CliError::Input(format!("invalid cutoff: {e}")))?;
                        configs.push(ClusterConfig {
                            weighting,
                            symmetrization,
                            algorithm,
                            metric,
                            cutoff,
                        });
                    }
                }
            }
        }
    }

    if configs.is_empty() {
        eprintln!("warning: the requested restriction yields no configurations");
        return emit(&args.output, "");
    }

    let mut rows = Vec::with_capacity(configs.len());
    for config in &configs {
        let start = Instant::now();
        let result = run_pipeline_with(&workflow, config, &options);
        let elapsed = start.elapsed();
        rows.push(output::SweepRow { config: *config, result, elapsed });
    }

    let all_failed = rows.iter().all(|row| row.result.is_err());
    let content = match args.format {
        SweepFormatArg::Table => output::sweep_table(&rows),
        SweepFormatArg::Json => output::sweep_json(&rows, args.hop_paths),
    };
    emit(&args.output, &content)?;
    if all_failed {
        return Err(CliError::Config("every configuration in the sweep failed".into()));
    }
    Ok(())
}

fn cmd_export_graph(args: &ExportArgs) -> Result<(), CliError> {
    let workflow = load_workflow(&args.workflow)?;
    let graph: Digraph = build_graph(&workflow, args.weighting.into());
    let content = match args.format {
        FormatArg::Json => output::graph_json(&graph),
        FormatArg::Dot => dot::plain_graph(&workflow.name, &graph),
    };
    emit(&args.output, &content)
}

fn cmd_generate(args: &GenerateArgs) -> Result<(), CliError> {
    let spec = SyntheticSpec {
        groups: args.groups,
        instances_per_group: args.instances_per_group,
        intra_group_connection_probability: args.intra_probability,
        inter_group_connection_probability: args.inter_probability,
        seed: args.seed,
    };
    let workflow = generate_workflow(&spec).map_err(|e| CliError::Input(e.to_string()))?;
    emit(&args.output, &serialize_workflow(&workflow))
}

fn cmd_bench(args: &BenchArgs) -> Result<(), CliError> {
    let workflow = load_workflow(&args.workflow)?;
    let config = args.config.to_config()?;
    let options = args.config.options();

    let mut times_ms = Vec::with_capacity(args.repetitions as usize);
    for _ in 0..args.repetitions {
        let start = Instant::now();
        run_pipeline_with(&workflow, &config, &options)?;
        times_ms.push(start.elapsed().as_secs_f64() * 1e3);
    }
    let mean = times_ms.iter().sum::<f64>() / times_ms.len() as f64;
    let min = times_ms.iter().copied().fold(f64::INFINITY, f64::min);
    let max = times_ms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    println!("config: {}", config.fingerprint());
    println!("repetitions: {}", args.repetitions);
    println!("mean: {mean:.3} ms");
    println!("min:  {min:.3} ms");
    println!("max:  {max:.3} ms");
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Cluster(args) => cmd_cluster(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::ExportGraph(args) => cmd_export_graph(args),
        Command::Generate(args) => cmd_generate(args),
        Command::Bench(args) => cmd_bench(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(error) => {
            eprintln!("error: {}", error.message());
            ExitCode::from(error.exit_code())
        }
    }
}
