use std::fs::File;
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod suites;

/// Discrete Wigner functions of multiqubit states.
#[derive(Debug, Parser)]
#[command(name = "dwf", version)]
struct Cli {
    /// Input JSON file; stdin when omitted.
    #[arg(short, long, global = true)]
    input: Option<PathBuf>,

    /// Output file; stdout when omitted.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Density matrix to Wigner function.
    Compute {
        #[arg(long)]
        net: u128,
    },
    /// Wigner function back to a density matrix.
    ToRho,
    /// Stokes vector of a state or a Wigner function.
    Stokes,
    /// Wigner function of a subsystem.
    Reduce {
        /// Kept qubits, comma separated and increasing.
        #[arg(long, value_delimiter = ',', required = true)]
        keep: Vec<usize>,
        /// Net of the input; checked against the file when given.
        #[arg(long)]
        net_in: Option<u128>,
        #[arg(long)]
        net_out: u128,
    },
    /// Re-express a Wigner function in another net.
    Convert {
        #[arg(long)]
        net_out: u128,
    },
    /// Wigner function of the spin-flipped state.
    Spinflip,
    /// Wigner function of the complex-conjugated state.
    Conjugate,
    /// List or describe quantum nets.
    Nets {
        #[arg(long)]
        n: usize,
        /// Add translation-orbit labels (n <= 2).
        #[arg(long)]
        classify: bool,
        /// Add the product form of each net (n = 2).
        #[arg(long)]
        detect_product: bool,
        /// Print the digits of a single net id.
        #[arg(long)]
        describe: Option<u128>,
        /// List a fixed-seed sample of this many nets instead of all.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Concurrence of a pure two-qubit state from its Wigner function.
    Concurrence,
    /// Run invariant suites and report pass/fail counts.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
}

/// Failure classes mapped to exit codes 2 and 3.
#[derive(Debug)]
pub enum Failure {
    Validation(String),
    Internal(String),
}

impl From<dwf_core::Error> for Failure {
    fn from(e: dwf_core::Error) -> Self {
        if e.is_validation() {
            Failure::Validation(e.to_string())
        } else {
            Failure::Internal(e.to_string())
        }
    }
}

fn input(path: &Option<PathBuf>) -> Result<Box<dyn Read>, Failure> {
    match path {
        Some(p) => File::open(p)
            .map(|f| Box::new(BufReader::new(f)) as Box<dyn Read>)
            .map_err(|e| Failure::Validation(format!("cannot open {}: {e}", p.display()))),
        None => Ok(Box::new(io::stdin().lock())),
    }
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>, Failure> {
    match path {
        Some(p) => File::create(p)
            .map(|f| Box::new(BufWriter::new(f)) as Box<dyn Write>)
            .map_err(|e| Failure::Internal(format!("cannot create {}: {e}", p.display()))),
        None => Ok(Box::new(io::stdout().lock())),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    use commands as c;
    let mut out = output(&cli.output)?;
    match cli.command {
        Command::Compute { net } => c::compute(input(&cli.input)?, &mut out, net),
        Command::ToRho => c::to_rho(input(&cli.input)?, &mut out),
        Command::Stokes => c::stokes(input(&cli.input)?, &mut out),
        Command::Reduce {
            keep,
            net_in,
            net_out,
        } => c::reduce(input(&cli.input)?, &mut out, keep, net_in, net_out),
        Command::Convert { net_out } => c::convert(input(&cli.input)?, &mut out, net_out),
        Command::Spinflip => c::flip(input(&cli.input)?, &mut out, c::Flip::Spin),
        Command::Conjugate => c::flip(input(&cli.input)?, &mut out, c::Flip::Conjugate),
        Command::Nets {
            n,
            classify,
            detect_product,
            describe,
            sample,
            seed,
        } => match describe {
            Some(id) => c::describe(&mut out, n, id),
            None => c::atlas(&mut out, n, classify, detect_product, sample, seed),
        },
        Command::Concurrence => c::concurrence(input(&cli.input)?, &mut out),
        Command::Verify { suite, n } => suites::verify(&mut out, &suite, n),
    }?;
    out.flush()
        .map_err(|e| Failure::Internal(format!("write failed: {e}")))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
