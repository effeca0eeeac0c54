use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nfl_cli::commands::{self, BoundKind};
use nfl_cli::format::{parse_function_set, FunctionSetFile};
use nfl_cli::CliError;
use nfl_core::Caps;

/// Exact enumeration of permutation-closed function sets and no-free-lunch checks.
#[derive(Parser)]
#[command(name = "nfl", version)]
struct Cli {
    /// Enumeration cap (functions and algorithms).
    #[arg(long, global = true)]
    cap: Option<u64>,

    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Histogram, c.u.p. subset and total subset counts for one signature.
    Count { x_size: usize, y_size: usize },
    /// Fraction table as CSV.
    Fraction {
        #[arg(long, default_value_t = 1)]
        x_min: usize,
        #[arg(long, default_value_t = 7)]
        x_max: usize,
        #[arg(long, value_delimiter = ',', default_value = "2,3,4")]
        y: Vec<usize>,
    },
    /// c.u.p. verdict and basis decomposition of a function-set file.
    Check { file: PathBuf },
    /// Smallest c.u.p. superset, written as a function-set file.
    Closure { file: PathBuf },
    /// Orbit of one listed function, written as a function-set file.
    Orbit {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        index: usize,
    },
    /// Runs algorithms for m steps on every function and compares the results.
    Nfl {
        file: PathBuf,
        #[arg(long)]
        m: usize,
        /// lex, rev, random, random:SEED, greedy (comma separated), or all.
        #[arg(long, default_value = "lex,rev")]
        algorithms: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        hypercube: Option<u32>,
    },
    /// Constraint class of a neighborhood measure and a not-c.u.p. witness.
    Landscape {
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        bound: f64,
        #[arg(long)]
        hypercube: Option<u32>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Steepness,
    Minima,
}

fn read_doc(path: &Path) -> Result<FunctionSetFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    parse_function_set(&text).map_err(|e| match e {
        CliError::Parse { location, message } => CliError::Parse {
            location: format!("{}: {location}", path.display()),
            message,
        },
        other => other,
    })
}

fn execute(cli: &Cli) -> Result<String, CliError> {
    let mut caps = Caps::default();
    if let Some(cap) = cli.cap {
        caps.max_functions = cap;
        caps.max_algorithms = cap;
    }
    match &cli.command {
        Command::Count { x_size, y_size } => commands::cmd_count(*x_size, *y_size),
        Command::Fraction { x_min, x_max, y } => commands::cmd_fraction(*x_min, *x_max, y),
        Command::Check { file } => Ok(commands::cmd_check(&read_doc(file)?)),
        Command::Closure { file } => commands::cmd_closure(&read_doc(file)?, &caps),
        Command::Orbit { file, index } => commands::cmd_orbit(&read_doc(file)?, *index, &caps),
        Command::Nfl {
            file,
            m,
            algorithms,
            seed,
            hypercube,
        } => {
            let doc = read_doc(file)?;
            let nb = commands::resolve_neighborhood(&doc, *hypercube, &caps)?;
            let algs = commands::parse_algorithms(algorithms, doc.signature(), *m, *seed, nb.as_ref(), &caps)?;
            commands::cmd_nfl(&doc, *m, &algs)
        }
        Command::Landscape {
            file,
            kind,
            bound,
            hypercube,
        } => {
            let doc = read_doc(file)?;
            let nb = commands::resolve_neighborhood(&doc, *hypercube, &caps)?;
            let kind = match kind {
                Kind::Steepness => BoundKind::Steepness,
                Kind::Minima => BoundKind::Minima,
            };
            commands::cmd_landscape(&doc, nb, kind, *bound, &caps)
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
    let result = execute(&cli).and_then(|text| match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("nfl: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
