use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use spectral_sens_cli::commands::{self, OracleCheckConfig, Selection};
use spectral_sens_cli::dataset::{self, Dataset};
use spectral_sens_cli::{
    AlgoChoice, CliError, DatasetSpec, Format, Output, Result, RunConfig, SbmGrid,
};
use spectral_sens_core::DistanceKind;

/// Sensitivity of spectral clustering to random edge deletion.
#[derive(Debug, Parser)]
#[command(name = "spectral-sens", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct Common {
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Monte Carlo trials [default: 1000, or 200 with --quick]
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// Edge deletion probability.
    #[arg(long, global = true, default_value_t = 1e-3)]
    p: f64,
    /// Number of clusters.
    #[arg(long, global = true, default_value_t = 2)]
    k: usize,
    #[arg(long, global = true, default_value = "out")]
    out_dir: PathBuf,
    /// 200 trials and the reduced block-model grid.
    #[arg(long, global = true)]
    quick: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Both)]
    format: Format,
}

#[derive(Debug, Args)]
struct DataArgs {
    /// A single edge-list file.
    #[arg(long, conflicts_with = "edge_list_dir")]
    graph: Option<PathBuf>,
    /// A directory of edge-list files (.edges, .edgelist, .txt).
    #[arg(long)]
    edge_list_dir: Option<PathBuf>,
    /// Remap arbitrary vertex tokens to dense ids.
    #[arg(long)]
    relabel: bool,
    /// Blocks of the generated block-model grid [default: --k].
    #[arg(long)]
    blocks: Option<usize>,
    /// Vertices per block [default: 100 / blocks].
    #[arg(long)]
    block_size: Option<usize>,
    /// Within-block edge probabilities, comma separated.
    #[arg(long, value_delimiter = ',')]
    within: Option<Vec<f64>>,
    /// Cross-block edge probabilities, comma separated.
    #[arg(long, value_delimiter = ',')]
    cross: Option<Vec<f64>>,
}

impl DataArgs {
    fn spec(&self, common: &Common) -> DatasetSpec {
        if let Some(path) = &self.graph {
            return DatasetSpec::File {
                path: path.clone(),
                relabel: self.relabel,
            };
        }
        if let Some(dir) = &self.edge_list_dir {
            return DatasetSpec::Directory {
                dir: dir.clone(),
                relabel: self.relabel,
            };
        }
        let mut grid = SbmGrid::standard(self.blocks.unwrap_or(common.k), common.quick);
        if let Some(size) = self.block_size {
            grid.size = size;
        }
        if let Some(within) = &self.within {
            grid.within = within.clone();
        }
        if let Some(cross) = &self.cross {
            grid.cross = cross.clone();
        }
        DatasetSpec::Sbm(grid)
    }
}

#[derive(Debug, Args)]
struct AlgoArgs {
    #[arg(long, value_enum, default_value_t = AlgoChoice::NscKmeans)]
    algo: AlgoChoice,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a dataset as edge lists (plus planted labels).
    Generate(DataArgs),
    /// Degree and component statistics.
    Stats(DataArgs),
    /// Cluster each graph and write its partition.
    Cluster {
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        algo: AlgoArgs,
    },
    /// Average sensitivity with per-trial logs.
    Sensitivity {
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        algo: AlgoArgs,
        #[arg(long, value_enum, default_value_t = Distance::Size)]
        distance: Distance,
        /// Report raw distances instead of dividing by vol(G).
        #[arg(long)]
        raw: bool,
    },
    /// Monte Carlo reliability.
    Reliability(DataArgs),
    /// Spectral bounds, predictors and assumption checklists.
    Bounds(DataArgs),
    /// Sensitivity against its spectral predictor, one point per graph.
    Scatter {
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        algo: AlgoArgs,
    },
    /// Sensitivity as a function of the deletion probability.
    Psweep {
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        algo: AlgoArgs,
        #[arg(long, value_delimiter = ',', default_values_t = default_p_list())]
        p_list: Vec<f64>,
        /// Only graphs whose predictor is below this value.
        #[arg(long)]
        max_predictor: Option<f64>,
        /// At most this many graphs.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Quantiles of reliability across a dataset per deletion probability.
    ReliabilityQuantiles {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long, value_delimiter = ',', default_values_t = (0..=10).map(|i| i as f64 / 100.0).collect::<Vec<_>>())]
        p_list: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_values_t = vec![0.1, 0.25, 0.5, 0.75, 0.9])]
        q_list: Vec<f64>,
    },
    /// Exhaustive-oracle invariant suite on random small graphs.
    OracleCheck {
        #[arg(long, default_value_t = 200)]
        graphs: usize,
        #[arg(long, default_value_t = 14)]
        max_n: usize,
        /// Perturb every second eigenvalue so the suite must fail.
        #[arg(long)]
        inject_fault: bool,
    },
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
enum Distance {
    Size,
    Volume,
}

fn default_p_list() -> Vec<f64> {
    (1..=10).map(|i| i as f64 * 1e-3).collect()
}

fn load(data: &DataArgs, common: &Common) -> Result<Dataset> {
    let ds = dataset::load(&data.spec(common), common.seed)?;
    for e in &ds.errors {
        eprintln!("skipping {}: {}", e.name, e.message);
    }
    Ok(ds)
}

fn check_probabilities(values: &[f64], what: &str) -> Result<()> {
    match values.iter().find(|x| !(0.0..=1.0).contains(*x)) {
        Some(bad) => Err(CliError::Usage(format!(
            "{what} value {bad} is not in [0, 1]"
        ))),
        None => Ok(()),
    }
}

fn run(cli: Cli) -> Result<()> {
    let common = &cli.common;
    check_probabilities(&[common.p], "--p")?;
    let trials = common
        .trials
        .unwrap_or(if common.quick { 200 } else { 1000 });
    if trials == 0 {
        return Err(CliError::Usage("--trials must be positive".into()));
    }
    let cfg = RunConfig {
        seed: common.seed,
        trials,
        p: common.p,
        output: Output::new(&common.out_dir, common.format),
    };
    let algorithm = |a: &AlgoArgs| a.algo.algorithm(common.k, common.seed);
    match &cli.command {
        Command::Generate(data) => commands::generate(&cfg, &load(data, common)?),
        Command::Stats(data) => commands::stats(&cfg, &load(data, common)?),
        Command::Cluster { data, algo } => {
            for (name, partition) in
                commands::cluster(&cfg, &load(data, common)?, &algorithm(algo))?
            {
                println!("{name}: part sizes {:?}", partition.part_sizes());
            }
            Ok(())
        }
        Command::Sensitivity {
            data,
            algo,
            distance,
            raw,
        } => {
            let kind = match distance {
                Distance::Size => DistanceKind::Size,
                Distance::Volume => DistanceKind::Volume,
            };
            let algo = algorithm(algo);
            for (name, est) in commands::sensitivity(&cfg, &load(data, common)?, &algo, kind, !raw)?
            {
                println!(
                    "{name}: mean {} stderr {} skipped {}",
                    est.mean, est.stderr, est.skipped
                );
            }
            Ok(())
        }
        Command::Reliability(data) => {
            for (name, c, se) in commands::reliability(&cfg, &load(data, common)?)? {
                println!("{name}: C(p) = {c} +- {se}");
            }
            Ok(())
        }
        Command::Bounds(data) => {
            let s = commands::bounds(&cfg, &load(data, common)?, common.k)?;
            println!(
                "{} graphs: mean n {} m {} nu2 {} nu3 {}",
                s.graphs, s.n_mean, s.m_mean, s.nu2_mean, s.nu3_mean
            );
            Ok(())
        }
        Command::Scatter { data, algo } => {
            let report = commands::scatter(&cfg, &load(data, common)?, &algorithm(algo))?;
            println!(
                "{} graphs, {} with positive sensitivity, spearman {:?}",
                report.rows.len(),
                report.positive().len(),
                report.spearman
            );
            Ok(())
        }
        Command::Psweep {
            data,
            algo,
            p_list,
            max_predictor,
            limit,
        } => {
            check_probabilities(p_list, "--p-list")?;
            let selection = Selection {
                max_predictor: *max_predictor,
                limit: *limit,
            };
            let report = commands::psweep(
                &cfg,
                &load(data, common)?,
                &algorithm(algo),
                p_list,
                selection,
            )?;
            for g in &report.graphs {
                println!("{}: r2 {:?}", g.name, g.fit.and_then(|f| f.r2));
            }
            Ok(())
        }
        Command::ReliabilityQuantiles {
            data,
            p_list,
            q_list,
        } => {
            check_probabilities(p_list, "--p-list")?;
            check_probabilities(q_list, "--q-list")?;
            commands::reliability_quantiles(&cfg, &load(data, common)?, p_list, q_list)?;
            Ok(())
        }
        Command::OracleCheck {
            graphs,
            max_n,
            inject_fault,
        } => {
            let check = OracleCheckConfig {
                graphs: *graphs,
                max_n: *max_n,
                inject_fault: *inject_fault,
                ..OracleCheckConfig::default()
            };
            let report = commands::oracle_check(&cfg, &check)?;
            print!("{}", report.render());
            let failed = report.checks.iter().filter(|c| !c.passed()).count();
            if failed > 0 {
                return Err(CliError::ChecksFailed {
                    failed,
                    total: report.checks.len(),
                });
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
