//! `berkstat` — exact seminorms, reductions, dependence certificates, and
//! power-sequence statistics over non-archimedean valued fields.

use berkstat_cli::commands;
use berkstat_cli::config::{resolve_run, resolve_settings, ConfigFile, RunFlags};
use berkstat_cli::error::CliError;
use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "berkstat",
    version,
    about = "Exact non-archimedean seminorms, reductions, dependence certificates, \
             and power-sequence statistics",
    after_help = "Exit codes: 0 success, 2 parse error, 3 factorization bound exceeded, \
                  4 precision cap exceeded, 5 domain precondition violation, 1 other."
)]
struct Cli {
    /// Field kind: 't' (rational functions, t-adic) or 'p' (rationals, p-adic)
    #[arg(long, global = true)]
    field: Option<String>,

    /// The prime of the p-adic field
    #[arg(long, global = true)]
    p: Option<u64>,

    /// Base c > 1 of the realized absolute value (default: p, or 2 for t-adic)
    #[arg(long, global = true)]
    base: Option<String>,

    /// Decimal digits in rendered values (default 12)
    #[arg(long, global = true)]
    digits: Option<usize>,

    /// JSON config file; flags override its entries
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunArgs {
    /// The experiment point, e.g. "(1 : 2+t : 4)"
    #[arg(long)]
    z: Option<String>,

    /// Orbit length (default 500)
    #[arg(long)]
    lmax: Option<u64>,

    /// Comma-separated checkpoint lengths (default 10,50,100,200,500)
    #[arg(long)]
    checkpoints: Option<String>,

    /// Test family: 'default', 'default:K', or 'poly1; poly2; ...'
    #[arg(long)]
    family: Option<String>,

    /// Seed of the pseudo-random family members (default 42)
    #[arg(long)]
    seed: Option<u64>,

    /// Trial-division bound for dependence analysis (default 1000000)
    #[arg(long)]
    bound: Option<u64>,

    /// Engine mode: 'exact', 'adaptive', or 'adaptive:P0,CAP'
    #[arg(long)]
    mode: Option<String>,

    /// Worker threads for per-member evaluation (default 1)
    #[arg(long)]
    threads: Option<usize>,

    /// Output directory for report.json / series.csv (default '.')
    #[arg(long)]
    out: Option<PathBuf>,
}

impl RunArgs {
    fn into_flags(self) -> RunFlags {
        RunFlags {
            z: self.z,
            lmax: self.lmax,
            checkpoints: self.checkpoints,
            family: self.family,
            seed: self.seed,
            bound: self.bound,
            mode: self.mode,
            threads: self.threads,
            out: self.out,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Height of a polynomial (maximal coefficient absolute value)
    Height {
        /// The polynomial, e.g. "X1^3 - X0*X1*X2"
        #[arg(long)]
        f: String,
    },
    /// Multiplicative seminorm of a polynomial at a point
    Seminorm {
        /// The polynomial
        #[arg(long)]
        f: String,
        /// The point: "(1 : 2+t : 4)", "disc(center=(0, 0); rho=(0, 0))", or "gauss"
        #[arg(long)]
        z: String,
    },
    /// Normalized statistic lambda = [f](z) / (H(f) * sup(z)^deg)
    Lambda {
        /// The polynomial (must be homogeneous)
        #[arg(long)]
        f: String,
        /// The point
        #[arg(long)]
        z: String,
    },
    /// Image of a point under the reduction map
    Reduce {
        /// The point
        #[arg(long)]
        z: String,
    },
    /// Basis of the multiplicative relation lattice of residue coordinates
    Multdep {
        /// Comma-separated residue coordinates, e.g. "2,4" or "-12/5,3"
        coords: String,
        /// Trial-division bound (default 1000000)
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Dependence certificate at a point: relation, witness form, and |A|
    Witness {
        /// The point
        #[arg(long)]
        z: String,
        /// Trial-division bound (default 1000000)
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Full convergence experiment; writes report.json and series.csv
    Weyl {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Statistics series without a verdict; writes series.csv
    Stats {
        #[command(flatten)]
        run: RunArgs,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let cfg = match &cli.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let settings = resolve_settings(
        cli.field.as_deref(),
        cli.p,
        cli.base.as_deref(),
        cli.digits,
        &cfg,
    )?;
    match cli.command {
        Command::Height { f } => commands::height(&settings, &f),
        Command::Seminorm { f, z } => commands::seminorm(&settings, &f, &z),
        Command::Lambda { f, z } => commands::lambda(&settings, &f, &z),
        Command::Reduce { z } => commands::reduce(&settings, &z),
        Command::Multdep { coords, bound } => {
            let bound = bound
                .or(cfg.bound)
                .unwrap_or(berkstat_core::equidist::DEFAULT_BOUND);
            commands::multdep_cmd(&settings, &coords, bound)
        }
        Command::Witness { z, bound } => {
            let bound = bound
                .or(cfg.bound)
                .unwrap_or(berkstat_core::equidist::DEFAULT_BOUND);
            commands::witness(&settings, &z, bound)
        }
        Command::Weyl { run } => {
            let rs = resolve_run(&run.into_flags(), &cfg)?;
            commands::weyl(&settings, &rs)
        }
        Command::Stats { run } => {
            let rs = resolve_run(&run.into_flags(), &cfg)?;
            commands::stats(&settings, &rs)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {}", e);
        std::process::exit(e.exit_code());
    }
}
