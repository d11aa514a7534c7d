use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use osnwalk::evaluation::DEFAULT_KL_EPSILON;
use osnwalk::experiment::{self, ConfigFile, ExperimentConfig, GenField};
use osnwalk::report::Property;
use osnwalk::{Method, Result};

#[derive(Parser)]
#[command(name = "osnwalk", version, about = "Random-walk sampling and estimation on directed graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact ground truth of a graph.
    Stats(Common),
    /// Run the walks and write trace files.
    Sample(Common),
    /// Estimate properties from trace files.
    Estimate {
        #[command(flatten)]
        common: Common,
        /// Trace files or directories of trace files.
        #[arg(long, required = true, num_args = 1..)]
        traces: Vec<PathBuf>,
    },
    /// Compare estimate reports against ground truth.
    Evaluate {
        /// Directory of estimate report JSON files.
        #[arg(long)]
        reports: PathBuf,
        /// Ground-truth JSON written by `stats`.
        #[arg(long)]
        truth: PathBuf,
        #[arg(long, default_value_t = DEFAULT_KL_EPSILON)]
        kl_epsilon: f64,
        /// Output CSV path (default: evaluation.csv next to the reports).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Full pipeline: stats, sample, estimate, evaluate.
    Run(Common),
}

#[derive(Args)]
struct Common {
    /// TOML config file; command-line flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Edge-list file (optionally gzip-compressed).
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Synthetic graph, e.g. `er:100:0.05:7`, `complete:4+ring:5`, `sym(er:20:0.3:1)`.
    #[arg(long)]
    gen: Option<String>,
    #[arg(long, value_delimiter = ',')]
    method: Option<Vec<Method>>,
    #[arg(long, conflicts_with = "budget_frac")]
    budget: Option<usize>,
    #[arg(long)]
    budget_frac: Option<f64>,
    #[arg(long)]
    walk_prob: Option<f64>,
    #[arg(long)]
    jump_weight: Option<f64>,
    #[arg(long)]
    reps: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_delimiter = ',')]
    props: Option<Vec<Property>>,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn experiment(self) -> Result<ExperimentConfig> {
        let base = match &self.config {
            Some(path) => ConfigFile::load(path)?,
            None => ConfigFile::default(),
        };
        let over = ConfigFile {
            graph: self.graph,
            gen: self.gen.map(GenField::Text),
            methods: self.method,
            budget: self.budget,
            budget_frac: self.budget_frac,
            walk_prob: self.walk_prob,
            jump_weight: self.jump_weight,
            reps: self.reps,
            seed: self.seed,
            seed_node: None,
            props: self.props,
            out: self.out,
        };
        ExperimentConfig::from_file(base.merged(over))
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Stats(common) => {
            let cfg = common.experiment()?;
            let g = experiment::load_graph(&cfg.graph)?;
            let truth = experiment::cmd_stats(&g)?;
            experiment::write_truth(&cfg.out, &truth)?;
            println!("{}", serde_json::to_string_pretty(&truth)?);
        }
        Command::Sample(common) => {
            let cfg = common.experiment()?;
            let g = experiment::load_graph(&cfg.graph)?;
            let runs = experiment::cmd_sample(&g, &cfg)?;
            for path in experiment::write_traces(&cfg.out.join("traces"), &g, &runs)? {
                println!("{}", path.display());
            }
        }
        Command::Estimate { common, traces } => {
            let cfg = common.experiment()?;
            let g = experiment::load_graph(&cfg.graph)?;
            let runs = experiment::read_traces(&traces, &g)?;
            let reports = experiment::cmd_estimate(&g, &runs, &cfg.props)?;
            experiment::write_reports(&cfg.out.join("reports"), &reports)?;
            println!("{} reports written to {}", reports.len(), cfg.out.join("reports").display());
        }
        Command::Evaluate { reports, truth, kl_epsilon, out } => {
            let truth = experiment::read_truth(&truth)?;
            let mut loaded = experiment::read_reports(&reports)?;
            let table = experiment::cmd_evaluate(&mut loaded, &truth, kl_epsilon)?;
            experiment::write_reports(&reports, &loaded)?;
            let out = out.unwrap_or_else(|| reports.join("evaluation.csv"));
            std::fs::write(&out, &table).map_err(|e| osnwalk::Error::Io { path: out.clone(), source: e })?;
            print!("{table}");
        }
        Command::Run(common) => {
            let cfg = common.experiment()?;
            let summary = experiment::run(&cfg)?;
            println!(
                "N={} |E|={} budget={} walks={} steps={}",
                summary.truth.node_count, summary.truth.edge_count, summary.budget, summary.runs, summary.total_steps
            );
            print!("{}", summary.table);
        }
    }
    Ok(())
}
