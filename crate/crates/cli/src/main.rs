//! `polarium`: batch front end with JSON in and JSON out.

mod commands;
mod input;
mod table;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use polarium::{Error, ErrorKind};

const MODULE: &str = "cli";

#[derive(Parser, Debug)]
#[command(name = "polarium", version, about = "Polar data of loop Lie algebra duals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Root datum, e.g. `A2` or `[["A",1],["torus",1]]`.
    #[arg(long = "type", global = true)]
    type_: Option<String>,
    /// Input document; `-` reads standard input.
    #[arg(long, global = true)]
    input: Option<String>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Degree window `LO:HI` for lattice checks.
    #[arg(long, global = true)]
    window: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    J,
    K,
    Both,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Stratum of a tail on a torus class.
    Classify,
    /// Breaks, Levi ladder and components of a polar datum.
    YuSequence,
    /// The epipelagic datum on the Coxeter class of order `m`.
    Epipelagic {
        #[arg(long)]
        m: u64,
    },
    /// The homogeneous datum of slope `i/m`.
    Homogeneous {
        #[arg(long)]
        m: u64,
        #[arg(long, default_value_t = 1)]
        i: u64,
    },
    /// Graded lattice of a type A datum with its closure and character checks.
    Jlattice {
        /// `0`, `rho/M`, or comma-separated coordinates.
        #[arg(long)]
        point: Option<String>,
    },
    /// Sweep the SL2 grid through the closed form and the lifting path.
    VerifySl2 {
        #[arg(long, default_value = "default")]
        grid: String,
    },
    /// Orders of Springer-regular classes, all and elliptic.
    RegularNumbers,
    /// One torus class per conjugacy class of the Weyl group.
    ListTori,
    /// Seeded sampling of the stratification properties.
    PartitionCheck,
    /// Rank of the pairing between lattice complements and partner pieces.
    Moveability {
        #[arg(long)]
        point: Option<String>,
        #[arg(long, value_enum, default_value_t = VariantArg::Both)]
        variant: VariantArg,
        /// Lower the threshold of this level by one step and drop its Lagrangian.
        #[arg(long)]
        lower: Option<usize>,
    },
}

/// Options shared by every command after parsing.
pub struct Options {
    pub type_: Option<String>,
    pub input: Option<String>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub window: Option<String>,
}

/// A finished command: its JSON document, its table rendering, and whether
/// the report records violations.
pub struct Outcome {
    pub json: serde_json::Value,
    pub table: String,
    pub violations: bool,
}

fn error_json(e: &Error) -> String {
    let doc = serde_json::json!({
        "error": {
            "code": e.kind.code(),
            "module": e.module,
            "message": e.message,
        }
    });
    serde_json::to_string_pretty(&doc).expect("error document") + "\n"
}

fn fail(e: &Error) -> ExitCode {
    print!("{}", error_json(e));
    eprintln!("polarium: {e}");
    ExitCode::from(e.kind.exit_status() as u8)
}

fn configure_threads() -> Result<(), Error> {
    let Ok(raw) = std::env::var("POLARIUM_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::invalid(MODULE, format!("POLARIUM_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::invariant(MODULE, e.to_string()))
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::invalid(MODULE, format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Error::invalid(MODULE, format!("cannot write output: {e}")))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind as K;
            if matches!(e.kind(), K::DisplayHelp | K::DisplayVersion | K::DisplayHelpOnMissingArgumentOrSubcommand) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let msg = e.render().to_string();
            let first = msg.lines().next().unwrap_or("bad arguments").trim_start_matches("error: ");
            return fail(&Error::new(ErrorKind::InvalidArgument, MODULE, first));
        }
    };
    if let Err(e) = configure_threads() {
        return fail(&e);
    }
    let opts = Options {
        type_: cli.type_,
        input: cli.input,
        seed: cli.seed,
        samples: cli.samples,
        window: cli.window,
    };
    let outcome = match commands::run(&cli.command, &opts) {
        Ok(o) => o,
        Err(e) => return fail(&e),
    };
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&outcome.json).expect("output document") + "\n",
        Format::Table => outcome.table,
    };
    if let Err(e) = emit(cli.out.as_ref(), &text) {
        return fail(&e);
    }
    if outcome.violations {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    }
}
