use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod figures;
mod grid;
mod table;

use commands::{CliError, CliResult, Command};
use table::Format;

/// SIR distributions and gains of cellular network models.
#[derive(Debug, Parser)]
#[command(name = "cellsir", version)]
struct Cli {
    #[command(subcommand)]
    command: Top,
    /// Output file (stdout when omitted).
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv", global = true)]
    format: Format,
    /// Worker threads (default: $CELLSIR_WORKERS, else all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Top {
    #[command(flatten)]
    Run(Command),
    /// Re-runs the configuration embedded in a CSV or JSON result.
    Rerun { file: PathBuf },
}

fn workers(flag: Option<usize>) -> CliResult<usize> {
    if let Some(w) = flag {
        return if w == 0 { Err(CliError::Usage("--workers must be at least 1".into())) } else { Ok(w) };
    }
    if let Ok(v) = std::env::var("CELLSIR_WORKERS") {
        return match v.trim().parse::<usize>() {
            Ok(w) if w > 0 => Ok(w),
            _ => Err(CliError::Usage(format!("CELLSIR_WORKERS='{v}' is not a positive integer"))),
        };
    }
    Ok(std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
}

fn execute(cli: Cli) -> CliResult<()> {
    let workers = workers(cli.workers)?;
    let mut command = match cli.command {
        Top::Run(c) => c,
        Top::Rerun { file } => {
            let text = fs::read_to_string(&file)?;
            let cfg = table::read_config(&text).map_err(CliError::Usage)?;
            let cfg = match cfg.get("figure") {
                // per-figure files carry the figures config plus the panel tag
                Some(_) => {
                    let mut c = cfg.clone();
                    c.as_object_mut().map(|o| o.remove("figure"));
                    c
                }
                None => cfg,
            };
            serde_json::from_value(cfg).map_err(|e| CliError::Usage(format!("unusable config: {e}")))?
        }
    };
    command.resolve()?;
    let start = std::time::Instant::now();
    let table = command.run(workers)?;
    let secs = start.elapsed().as_secs_f64();
    match cli.output {
        Some(path) => {
            let mut f = std::io::BufWriter::new(fs::File::create(path)?);
            table.write(&mut f, cli.format, secs)?;
            f.flush()?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            table.write(&mut lock, cli.format, secs)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("cellsir: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
