use std::path::PathBuf;
use std::process::ExitCode;

use bergman_cli::{first_failure, run, Config, Suite};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "bergman",
    version,
    about = "Run the Bergman-space verification suites"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// JSON config; built-in defaults when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output directory for `<suite>.csv` and `<suite>.json`.
    #[arg(
        long,
        global = true,
        env = "BERGMAN_OUT_DIR",
        default_value = "reports"
    )]
    out: PathBuf,

    /// Overrides the config seed.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Overrides the number of exhaustion levels N.
    #[arg(long, global = true)]
    levels: Option<usize>,

    /// Overrides the boundary sample count M.
    #[arg(long, global = true)]
    samples: Option<usize>,

    /// Only report failures.
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// ρ(f) against the exterior norm of the boundary Cauchy integral.
    VerifyLemma1,
    /// ‖Kg‖ = ‖g‖ on the disk, by coefficients and by quadrature.
    VerifyDiskIsometry,
    /// ρ along exhaustions stays below ‖g‖ for γ = Kg.
    Theorem1,
    /// Inversion and bounded ρ-sequences for principal parts.
    Theorem2,
    /// Off-support Beurling transform against quadrature.
    Beurling,
    /// Level independence and kernel identity of the boundary functional.
    Riesz,
    /// Every suite.
    All,
}

impl Command {
    fn suite(self) -> Option<Suite> {
        match self {
            Command::VerifyLemma1 => Some(Suite::Lemma1),
            Command::VerifyDiskIsometry => Some(Suite::DiskIsometry),
            Command::Theorem1 => Some(Suite::Theorem1),
            Command::Theorem2 => Some(Suite::Theorem2),
            Command::Beurling => Some(Suite::Beurling),
            Command::Riesz => Some(Suite::Riesz),
            Command::All => None,
        }
    }
}

fn load(cli: &Cli) -> Result<Config, bergman_cli::CliError> {
    let mut config = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    if let Some(levels) = cli.levels {
        config.exhaustion.levels = levels;
        config.riesz.levels = config.riesz.levels.min(levels);
    }
    if let Some(samples) = cli.samples {
        config.samples = samples;
    }
    config.validate()?;
    Ok(config)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match load(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let outcomes = match run(cli.command.suite(), &config, &cli.out) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    if !cli.quiet {
        for o in &outcomes {
            println!(
                "{:<22} {}  {} checks, {} failed",
                o.suite.name(),
                if o.passed() { "PASS" } else { "FAIL" },
                o.checks,
                o.failures
            );
        }
    }
    match first_failure(&outcomes) {
        None => ExitCode::SUCCESS,
        Some(f) => {
            eprintln!("FAIL {f}");
            ExitCode::from(1)
        }
    }
}
