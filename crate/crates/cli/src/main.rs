use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use kerr_optomech_cli::{run_recipe, run_sweep, selftest, Figure, Recipe, SweepError, SweepSummary, DEFAULT_RESOLUTION};
use kerr_optomech_core::{evaluate, parse_config, Config};

const EXIT_IO: u8 = 1;
const EXIT_INVARIANT: u8 = 2;

#[derive(Parser)]
#[command(name = "kerr-optomech", version, about = "Steady-state entanglement of a Kerr optomechanical cavity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a single parameter point.
    Point {
        #[arg(long)]
        config: PathBuf,
        /// Print JSON instead of a CSV row.
        #[arg(long)]
        json: bool,
    },
    /// Evaluate every point of a configuration with ranges.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, env = "KERR_OPTOMECH_WORKERS")]
        workers: Option<usize>,
    },
    /// Write the data behind one of the figure scans.
    Figure {
        name: Figure,
        #[arg(long)]
        out: PathBuf,
        /// Points per swept axis.
        #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
        resolution: usize,
        #[arg(long, env = "KERR_OPTOMECH_WORKERS")]
        workers: Option<usize>,
    },
    /// Run the oracle cross-checks.
    Selftest,
}

enum Failure {
    Io(String),
    Invariant(String),
}

impl From<SweepError> for Failure {
    fn from(e: SweepError) -> Self {
        Failure::Io(e.to_string())
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_IO)
        }
        Err(Failure::Invariant(msg)) => {
            eprintln!("invariant violated: {msg}");
            ExitCode::from(EXIT_INVARIANT)
        }
    }
}

fn workers(flag: Option<usize>) -> usize {
    flag.filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

fn read_config(path: &Path) -> Result<Config, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    parse_config(&text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn create(path: &Path) -> Result<BufWriter<File>, Failure> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn finish(summary: SweepSummary) -> Result<(), Failure> {
    eprintln!("{}", summary.report());
    if summary.violations > 0 {
        return Err(Failure::Invariant(format!("{} covariance matrices failed the uncertainty check", summary.violations)));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Point { config, json } => {
            let p = match read_config(&config)? {
                Config::Point(p) => p,
                Config::Sweep(_) => return Err(Failure::Io("point expects a configuration without ranges".into())),
            };
            let ev = evaluate(&p);
            if json {
                let text = serde_json::to_string_pretty(&ev.record).expect("records serialize");
                println!("{text}");
            } else {
                let mut w = kerr_optomech_cli::RecordWriter::full(std::io::stdout().lock())
                    .map_err(|e| Failure::Io(e.to_string()))?;
                w.write(&ev.record, None).map_err(|e| Failure::Io(e.to_string()))?;
                drop(w.finish().map_err(|e| Failure::Io(e.to_string()))?);
            }
            if let Some(e) = &ev.error {
                eprintln!("{}: {e}", ev.record.status.as_str());
            }
            if kerr_optomech_cli::sweep::is_violation(&ev) {
                return Err(Failure::Invariant(ev.error.map(|e| e.to_string()).unwrap_or_default()));
            }
            Ok(())
        }
        Command::Sweep { config, out, workers: n } => {
            let grid = read_config(&config)?.into_grid();
            let summary = run_sweep(&grid, create(&out)?, workers(n))?;
            finish(summary)
        }
        Command::Figure { name, out, resolution, workers: n } => {
            let recipe = Recipe::new(name, resolution);
            let summary = run_recipe(&recipe, create(&out)?, workers(n))?;
            finish(summary)
        }
        Command::Selftest => {
            let checks = selftest::run_all();
            for c in &checks {
                println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            let failed = checks.iter().filter(|c| !c.passed).count();
            if failed > 0 {
                return Err(Failure::Invariant(format!("{failed} self-test checks failed")));
            }
            Ok(())
        }
    }
}
