use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use flatstamp::cli_io::{load_config, run, PathSelection, RunError};
use flatstamp::verification::GridSpec;

/// Displacement and stress fields under a rigid stamp on a plane-strain plate.
#[derive(Debug, Parser)]
#[command(
    name = "flatstamp",
    version,
    after_help = "Exit status:\n  0  success\n  2  configuration error (syntax, unknown or missing key, invalid value, material, stamp touching an edge)\n  3  numerical failure (degenerate mode, solver or calibration failure, path divergence)\n  4  i/o error (reading the config or writing outputs)"
)]
struct Cli {
    /// TOML configuration file.
    #[arg(long)]
    config: PathBuf,

    /// Output directory (overrides `output.directory`; default `out`).
    #[arg(long)]
    output: Option<PathBuf>,

    /// Number of Fourier modes N.
    #[arg(long)]
    modes: Option<usize>,

    /// Interior grid nodes in x and y.
    #[arg(long, num_args = 2, value_names = ["NX", "NY"])]
    grid: Option<Vec<usize>>,

    /// Solution path: A, B, C or all.
    #[arg(long)]
    path: Option<PathSelection>,

    /// Run the verification suite and add it to the report.
    #[arg(long)]
    verify: bool,
}

fn execute(cli: Cli) -> Result<PathBuf, RunError> {
    let mut config = load_config(&cli.config)?;
    if let Some(n) = cli.modes {
        if n == 0 {
            return Err(flatstamp::cli_io::ConfigError::InvalidValue {
                section: "solver".into(),
                key: "modes".into(),
                reason: "--modes must be at least 1".into(),
            }
            .into());
        }
        config.modes = n;
    }
    if let Some(g) = cli.grid {
        config.grid = GridSpec::new(g[0], g[1]).map_err(|e| {
            flatstamp::cli_io::ConfigError::InvalidValue {
                section: "output".into(),
                key: "grid".into(),
                reason: e.to_string(),
            }
        })?;
    }
    if let Some(p) = cli.path {
        config.path = p;
    }
    config.verify |= cli.verify;
    let dir = cli
        .output
        .or_else(|| config.output_dir.clone())
        .unwrap_or_else(|| PathBuf::from("out"));
    let bundle = run(&config)?;
    bundle.write_to(&dir)?;
    Ok(dir)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(dir) => {
            println!("wrote {}", dir.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("flatstamp: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
