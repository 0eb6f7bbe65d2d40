use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cluster_reduce_cli::{
    cmd_example, cmd_orbit, cmd_period, cmd_reduce, cmd_verify, parse_rational_matrix, CliError,
    Outcome, QuiverDocument, RunConfig,
};

/// Reduce cluster iteration maps to symplectic maps.
///
/// DOC is a quiver document in JSON, or `-` for stdin. Exit codes: 0 ok,
/// 2 bad input, 3 full-rank form, 4 non-symplectic post-transform,
/// 5 a verification failed.
#[derive(Parser)]
#[command(name = "cluster-reduce", version)]
struct Cli {
    /// Largest period tried by the detector.
    #[arg(long, global = true, default_value_t = cluster_reduce::DEFAULT_MAX_PERIOD)]
    max_period: usize,

    /// Random points per numeric check.
    #[arg(long, global = true, default_value_t = 100)]
    trials: usize,

    /// Seed for all sampling.
    #[arg(long, global = true, default_value_t = cluster_reduce::sampling::DEFAULT_SEED)]
    seed: u64,

    /// Relative tolerance of numeric checks.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,

    /// Rational multiplier of the log-canonical form, e.g. -1/2.
    #[arg(long, global = true, default_value = "1", allow_hyphen_values = true)]
    scale: String,

    /// JSON file with a symplectic matrix T applied as G ↦ T G.
    #[arg(long, global = true, value_name = "FILE")]
    post_transform: Option<PathBuf>,

    /// Print the JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Detect the period of the quiver.
    Period { doc: String },
    /// Compute the Darboux basis, reduced variables and reduced map.
    Reduce { doc: String },
    /// Check invariance of the log-canonical form.
    Verify {
        doc: String,
        /// Verify against this period instead of the detected one.
        #[arg(long)]
        period: Option<usize>,
    },
    /// Iterate the map and check the projected orbit.
    Orbit {
        doc: String,
        /// Comma-separated positive initial values (default all ones).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        u0: Option<Vec<f64>>,
        #[arg(long, default_value_t = 10)]
        steps: usize,
    },
    /// Print a quiver document for a family instance, e.g. `fomin6 2 13 5 7`.
    Example {
        name: String,
        #[arg(allow_hyphen_values = true)]
        params: Vec<i64>,
    },
}

fn read_doc(path: &str) -> Result<QuiverDocument, CliError> {
    let text = if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{path}: {e}")))?
    };
    QuiverDocument::parse(&text)
}

fn config(cli: &Cli) -> Result<RunConfig, CliError> {
    let post_transform = match &cli.post_transform {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            Some(parse_rational_matrix(&text)?)
        }
        None => None,
    };
    Ok(RunConfig {
        seed: cli.seed,
        trials: cli.trials,
        tol: cli.tol,
        max_period: cli.max_period,
        scale: RunConfig::parse_scale(&cli.scale)?,
        post_transform,
    })
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    if let Command::Example { name, params } = &cli.command {
        return cmd_example(name, params);
    }
    let cfg = config(cli)?;
    match &cli.command {
        Command::Period { doc } => cmd_period(&read_doc(doc)?, &cfg),
        Command::Reduce { doc } => cmd_reduce(&read_doc(doc)?, &cfg),
        Command::Verify { doc, period } => cmd_verify(&read_doc(doc)?, &cfg, *period),
        Command::Orbit { doc, u0, steps } => cmd_orbit(&read_doc(doc)?, &cfg, u0.clone(), *steps),
        Command::Example { .. } => unreachable!(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            let _ = stdout.write_all(out.render(cli.json).as_bytes());
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
