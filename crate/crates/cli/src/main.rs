//! `stabcut`: bounds, separation, cut verification and facet checks for the
//! stable set polytope.

mod bench;
mod bound;
mod facet_check;
mod input;
mod separate;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use stabcut::lp::CutProcedure;
use stabcut::separation::SeparationParams;

#[derive(Parser, Debug)]
#[command(
    name = "stabcut",
    version,
    about = "Clique projection and lifting cuts for the stable set polytope"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    format: Format,
    /// Worker threads for batch commands (0 = one per core).
    #[arg(long, default_value_t = 0, global = true)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cutting-plane upper bounds for DIMACS instances.
    Bound(bound::BoundArgs),
    /// One separation round at a given point.
    Separate(separate::SeparateArgs),
    /// Check serialized cuts for validity.
    Verify(verify::VerifyArgs),
    /// Evaluate the facet conditions of a projection sequence.
    FacetCheck(facet_check::FacetCheckArgs),
    /// Averaged bounds over seeded random graphs.
    Bench(bench::BenchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

/// Separation parameters; unset flags keep the library defaults.
#[derive(Args, Debug, Clone)]
pub struct SepArgs {
    /// A clique counts as violated when `x(W) > 1 + min_violation` [default: 0.03].
    #[arg(long)]
    min_violation: Option<f64>,
    /// Projections always performed before a violated clique ends a walk [default: 10].
    #[arg(long)]
    min_depth: Option<usize>,
    /// Longest projection sequence [default: 20].
    #[arg(long)]
    max_depth: Option<usize>,
    /// Walks per separation round [default: 50].
    #[arg(long)]
    max_iter: Option<usize>,
    /// Cuts returned per round [default: 20].
    #[arg(long)]
    max_ncuts: Option<usize>,
    /// Every K-th projection picks its clique by bounded enumeration [default: 10].
    #[arg(long)]
    tomita_period: Option<usize>,
    /// Maximal cliques enumerated at those steps [default: 1000].
    #[arg(long)]
    tomita_limit: Option<usize>,
    /// Pool cliques need `x(W)` at least this [default: 0.65].
    #[arg(long)]
    clique_keep_threshold: Option<f64>,
    /// Seconds allowed for one lifting.
    #[arg(long)]
    lift_time_budget: Option<f64>,
}

impl SepArgs {
    pub fn params(&self) -> anyhow::Result<SeparationParams> {
        let mut p = SeparationParams::default();
        if let Some(v) = self.min_violation {
            p.min_violation = v;
        }
        if let Some(v) = self.min_depth {
            p.min_depth = v;
        }
        if let Some(v) = self.max_depth {
            p.max_depth = v;
        }
        if let Some(v) = self.max_iter {
            p.max_iter = v;
        }
        if let Some(v) = self.max_ncuts {
            p.max_ncuts = v;
        }
        if let Some(v) = self.tomita_period {
            p.tomita_period = v;
        }
        if let Some(v) = self.tomita_limit {
            p.tomita_limit = v;
        }
        if let Some(v) = self.clique_keep_threshold {
            p.clique_keep_threshold = v;
        }
        if let Some(v) = self.lift_time_budget {
            p.lift_time_budget = Duration::try_from_secs_f64(v)?;
        }
        p.validate()?;
        Ok(p)
    }
}

/// Options shared by the commands that run the cutting-plane loop.
#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    /// Procedures to run: c (clique cuts only), b (basic lifting), s (strengthened lifting).
    #[arg(
        long = "proc",
        value_enum,
        value_delimiter = ',',
        default_value = "c,b,s"
    )]
    procs: Vec<Proc>,
    /// Seconds per run.
    #[arg(long, default_value_t = 120.0)]
    time_limit: f64,
    /// Leave the time column empty so repeated runs print identical output.
    #[arg(long)]
    omit_timing: bool,
    /// Skip the exact validity check of every emitted cut.
    #[arg(long)]
    no_verify: bool,
    #[command(flatten)]
    sep: SepArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Proc {
    C,
    B,
    S,
}

impl From<Proc> for CutProcedure {
    fn from(p: Proc) -> Self {
        match p {
            Proc::C => CutProcedure::CliqueOnly,
            Proc::B => CutProcedure::Basic,
            Proc::S => CutProcedure::Strengthened,
        }
    }
}

/// File locations for the commands that read a single graph.
#[derive(Args, Debug, Clone)]
pub struct GraphArgs {
    /// DIMACS graph.
    #[arg(long)]
    graph: PathBuf,
    /// Use the complement (for clique benchmark files).
    #[arg(long)]
    complement: bool,
}

pub fn thread_pool(jobs: usize) -> anyhow::Result<rayon::ThreadPool> {
    Ok(rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?)
}

fn main() -> ExitCode {
    // Exit quietly when piped into `head` and the like.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Bound(a) => bound::run(a, cli.format, cli.jobs),
        Command::Separate(a) => separate::run(a, cli.format),
        Command::Verify(a) => verify::run(a, cli.format),
        Command::FacetCheck(a) => facet_check::run(a, cli.format),
        Command::Bench(a) => bench::run(a, cli.format, cli.jobs),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
