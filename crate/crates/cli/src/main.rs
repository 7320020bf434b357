//! `porous`: experiment driver for the constrained lattice gas and its
//! porous-medium limit. Every run resolves to a flat key = value spec
//! (defaults, then config file, then flags), echoes it, executes, and
//! leaves a manifest of content hashes next to the outputs. Runs with
//! equal resolved specs produce byte-identical files.

mod emit;
mod run;
mod spec;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Rejected before any work started; exit code 1.
    #[error("{0}")]
    Validation(String),
    /// Failed while running; exit code 2.
    #[error("{0}")]
    Runtime(String),
}

#[derive(Parser)]
#[command(name = "porous", version, about = "Constrained lattice gas and porous-medium tools")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the constrained dynamics from a product-measure start.
    Simulate(SimulateArgs),
    /// Solve the degenerate diffusion on the unit torus.
    Solve(SolveArgs),
    /// Truncate and mollify an initial density, reporting what changed.
    Regularize(RegularizeArgs),
    /// Compare lattice endpoint ensembles against the reference solve.
    HydroCompare(HydroArgs),
    /// Entropy cost of the regularization across ring sizes.
    EntropyScan(EntropyArgs),
    /// Identity residuals, norm bounds, and flux corrections on one run.
    Diagnostics(DiagArgs),
}

/// Flags shared by all subcommands; each mirrors a spec key of the
/// same name and overrides the config file entry.
#[derive(Args)]
struct CommonArgs {
    /// Flat `key = value` config file; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Constraint range (window size of the kinetic constraint).
    #[arg(long)]
    m: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    /// Replica worker threads; never changes the output bytes.
    #[arg(long)]
    threads: Option<String>,
    /// Output directory; receives the data, spec.resolved, manifest.txt.
    #[arg(long)]
    out: Option<String>,
    /// csv (default) or json.
    #[arg(long)]
    format: Option<String>,
    /// Replace a completed run already in the output directory.
    #[arg(long)]
    overwrite: bool,
}

fn push(overrides: &mut Vec<(&'static str, String)>, key: &'static str, flag: &Option<String>) {
    if let Some(text) = flag {
        overrides.push((key, text.clone()));
    }
}

impl CommonArgs {
    fn collect(&self, overrides: &mut Vec<(&'static str, String)>) {
        push(overrides, "m", &self.m);
        push(overrides, "seed", &self.seed);
        push(overrides, "threads", &self.threads);
        push(overrides, "out", &self.out);
        push(overrides, "format", &self.format);
        if self.overwrite {
            overrides.push(("overwrite", "true".to_string()));
        }
    }
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Ring size.
    #[arg(long)]
    n: Option<String>,
    /// Macroscopic horizon; microscopic time runs to t n^2.
    #[arg(long)]
    t: Option<String>,
    /// Density of the product-measure start (key simulate.alpha).
    #[arg(long)]
    alpha: Option<String>,
    /// Recorded configurations after time zero (key simulate.snapshots).
    #[arg(long)]
    snapshots: Option<String>,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Solver grid cells.
    #[arg(long)]
    grid: Option<String>,
    /// Horizon.
    #[arg(long)]
    t: Option<String>,
    /// Optional truncation level applied to the datum before solving.
    #[arg(long)]
    eps: Option<String>,
    /// Initial density: barenblatt or file:<path> (key solve.init).
    #[arg(long)]
    init: Option<String>,
    /// Pulse mass parameter (key solve.c).
    #[arg(long)]
    c: Option<String>,
    /// Pulse age (key solve.t0).
    #[arg(long)]
    t0: Option<String>,
    /// Fraction of the stability limit per step (key solve.cfl).
    #[arg(long)]
    cfl: Option<String>,
    /// Snapshots after time zero (key solve.snapshots).
    #[arg(long)]
    snapshots: Option<String>,
}

#[derive(Args)]
struct RegularizeArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Grid cells.
    #[arg(long)]
    grid: Option<String>,
    /// Truncation level; exactly one of --eps, --eps-rule.
    #[arg(long)]
    eps: Option<String>,
    /// default or power:<exponent>; evaluated at --n.
    #[arg(long)]
    eps_rule: Option<String>,
    /// Ring size the rule is evaluated at.
    #[arg(long)]
    n: Option<String>,
    /// Initial density (key regularize.init).
    #[arg(long)]
    init: Option<String>,
    /// Pulse mass parameter (key regularize.c).
    #[arg(long)]
    c: Option<String>,
    /// Pulse age (key regularize.t0).
    #[arg(long)]
    t0: Option<String>,
}

#[derive(Args)]
struct HydroArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Macroscopic horizon.
    #[arg(long)]
    t: Option<String>,
    /// Lattice replicas per ring size.
    #[arg(long)]
    replicas: Option<String>,
    /// Reference-solver grid cells.
    #[arg(long)]
    grid: Option<String>,
    /// Optional truncation level for the reference solve.
    #[arg(long)]
    eps: Option<String>,
    /// Comma-separated ring sizes (key hydro.sizes).
    #[arg(long)]
    sizes: Option<String>,
    /// Block radius of the empirical density (key hydro.ell).
    #[arg(long)]
    ell: Option<String>,
    /// Initial density (key hydro.init).
    #[arg(long)]
    init: Option<String>,
    /// Pulse mass parameter (key hydro.c).
    #[arg(long)]
    c: Option<String>,
    /// Pulse age (key hydro.t0).
    #[arg(long)]
    t0: Option<String>,
}

#[derive(Args)]
struct EntropyArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Comma-separated ring sizes (key entropy.sizes).
    #[arg(long)]
    sizes: Option<String>,
    /// default or power:<exponent>.
    #[arg(long)]
    eps_rule: Option<String>,
    /// Initial density (key entropy.init).
    #[arg(long)]
    init: Option<String>,
    /// Pulse mass parameter (key entropy.c).
    #[arg(long)]
    c: Option<String>,
    /// Pulse age (key entropy.t0).
    #[arg(long)]
    t0: Option<String>,
}

#[derive(Args)]
struct DiagArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Solver grid cells.
    #[arg(long)]
    grid: Option<String>,
    /// Horizon.
    #[arg(long)]
    t: Option<String>,
    /// Truncation level of the run under diagnosis.
    #[arg(long)]
    eps: Option<String>,
    /// Reference density of the tilted coordinate (key diag.alpha).
    #[arg(long)]
    alpha: Option<String>,
    /// Initial density (key diag.init).
    #[arg(long)]
    init: Option<String>,
    /// Pulse mass parameter (key diag.c).
    #[arg(long)]
    c: Option<String>,
    /// Pulse age (key diag.t0).
    #[arg(long)]
    t0: Option<String>,
    /// Snapshots after time zero (key diag.snapshots).
    #[arg(long)]
    snapshots: Option<String>,
}

fn resolve(cli: Cli) -> Result<spec::ExperimentSpec, CliError> {
    let mut overrides = Vec::new();
    let (sub, common) = match &cli.command {
        Command::Simulate(a) => {
            push(&mut overrides, "n", &a.n);
            push(&mut overrides, "t", &a.t);
            push(&mut overrides, "simulate.alpha", &a.alpha);
            push(&mut overrides, "simulate.snapshots", &a.snapshots);
            ("simulate", &a.common)
        }
        Command::Solve(a) => {
            push(&mut overrides, "grid", &a.grid);
            push(&mut overrides, "t", &a.t);
            push(&mut overrides, "eps", &a.eps);
            push(&mut overrides, "solve.init", &a.init);
            push(&mut overrides, "solve.c", &a.c);
            push(&mut overrides, "solve.t0", &a.t0);
            push(&mut overrides, "solve.cfl", &a.cfl);
            push(&mut overrides, "solve.snapshots", &a.snapshots);
            ("solve", &a.common)
        }
        Command::Regularize(a) => {
            push(&mut overrides, "grid", &a.grid);
            push(&mut overrides, "eps", &a.eps);
            push(&mut overrides, "eps-rule", &a.eps_rule);
            push(&mut overrides, "n", &a.n);
            push(&mut overrides, "regularize.init", &a.init);
            push(&mut overrides, "regularize.c", &a.c);
            push(&mut overrides, "regularize.t0", &a.t0);
            ("regularize", &a.common)
        }
        Command::HydroCompare(a) => {
            push(&mut overrides, "t", &a.t);
            push(&mut overrides, "replicas", &a.replicas);
            push(&mut overrides, "grid", &a.grid);
            push(&mut overrides, "eps", &a.eps);
            push(&mut overrides, "hydro.sizes", &a.sizes);
            push(&mut overrides, "hydro.ell", &a.ell);
            push(&mut overrides, "hydro.init", &a.init);
            push(&mut overrides, "hydro.c", &a.c);
            push(&mut overrides, "hydro.t0", &a.t0);
            ("hydro-compare", &a.common)
        }
        Command::EntropyScan(a) => {
            push(&mut overrides, "entropy.sizes", &a.sizes);
            push(&mut overrides, "eps-rule", &a.eps_rule);
            push(&mut overrides, "entropy.init", &a.init);
            push(&mut overrides, "entropy.c", &a.c);
            push(&mut overrides, "entropy.t0", &a.t0);
            ("entropy-scan", &a.common)
        }
        Command::Diagnostics(a) => {
            push(&mut overrides, "grid", &a.grid);
            push(&mut overrides, "t", &a.t);
            push(&mut overrides, "eps", &a.eps);
            push(&mut overrides, "diag.alpha", &a.alpha);
            push(&mut overrides, "diag.init", &a.init);
            push(&mut overrides, "diag.c", &a.c);
            push(&mut overrides, "diag.t0", &a.t0);
            push(&mut overrides, "diag.snapshots", &a.snapshots);
            ("diagnostics", &a.common)
        }
    };
    common.collect(&mut overrides);
    spec::build_spec(sub, common.config.as_deref(), &overrides)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            // Malformed invocation counts as a validation failure.
            eprint!("{e}");
            return ExitCode::from(1);
        }
        Err(e) => {
            // --help and --version.
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    let outcome = resolve(cli).and_then(|spec| {
        print!("{}", spec.render());
        run::execute(&spec)
    });
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
