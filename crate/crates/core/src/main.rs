use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use grover_phase::experiment::{
    classical_iterations, run_sweep, run_trajectory, run_verification, threshold_table, write_csv, CsvRecord,
    Strategy, SweepSpec, VerifyConfig,
};
use grover_phase::{BetaParams, Error, OptimizerConfig};

const EXIT_USAGE: u8 = 1;
const EXIT_VERIFY: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "grover-phase", version, about = "Optimal phase change for the generalized Grover iteration")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Optimal phase over an (alpha, theta) grid.
    Sweep {
        #[command(flatten)]
        size: SizeArgs,
        /// Grid size as <alpha points>x<theta points>.
        #[arg(long, default_value = "100x100", value_parser = parse_grid)]
        grid: (usize, usize),
        #[command(flatten)]
        optimizer: OptimizerArgs,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Per-step probabilities from the Hadamard state.
    Trajectory {
        #[command(flatten)]
        size: SizeArgs,
        /// classical, optimal, rough or fixed:<phi>.
        #[arg(long, default_value = "classical")]
        strategy: String,
        /// Defaults to floor(pi/4 sqrt(N)) + 1.
        #[arg(long)]
        steps: Option<usize>,
        #[command(flatten)]
        optimizer: OptimizerArgs,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Region boundaries and threshold probability for a list of sizes.
    Threshold {
        /// Comma-separated database sizes.
        #[arg(long = "n", value_delimiter = ',', conflicts_with = "qubits")]
        n: Vec<u64>,
        /// Comma-separated qubit counts.
        #[arg(long, value_delimiter = ',')]
        qubits: Vec<u32>,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Check the reduced map against full statevector simulation.
    Verify {
        /// Largest qubit count; every count from 2 up is checked.
        #[arg(long, default_value_t = 10)]
        qubits: u32,
        /// Samples per qubit count.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Use this phase for every sample.
        #[arg(long, allow_hyphen_values = true)]
        phi: Option<f64>,
        #[arg(long, default_value = "-")]
        out: String,
    },
}

#[derive(Args, Debug)]
struct SizeArgs {
    /// Database size N.
    #[arg(long = "n", conflicts_with = "qubits")]
    n: Option<u64>,
    /// Number of qubits, N = 2^qubits.
    #[arg(long)]
    qubits: Option<u32>,
}

impl SizeArgs {
    fn params(&self) -> Result<BetaParams, Error> {
        match (self.n, self.qubits) {
            (Some(n), _) => BetaParams::new(n),
            (None, Some(q)) => BetaParams::from_qubits(q),
            (None, None) => BetaParams::new(1024),
        }
    }
}

#[derive(Args, Debug)]
struct OptimizerArgs {
    #[arg(long, default_value_t = 1024)]
    scan_points: usize,
    #[arg(long, default_value_t = 64)]
    refine_iters: usize,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
}

impl OptimizerArgs {
    fn config(&self) -> OptimizerConfig {
        OptimizerConfig {
            scan_points: self.scan_points,
            refine_iters: self.refine_iters,
            tol: self.tol,
        }
    }
}

fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let (a, t) = s.split_once('x').ok_or_else(|| format!("expected <a>x<t>, got {s:?}"))?;
    let a = a.parse().map_err(|e| format!("alpha count: {e}"))?;
    let t = t.parse().map_err(|e| format!("theta count: {e}"))?;
    Ok((a, t))
}

enum Failure {
    Usage(String),
    Verify(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(e) => Failure::Io(e.to_string()),
            Error::Leakage(_) => Failure::Verify(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn open_output(path: &str) -> Result<Box<dyn Write>, Failure> {
    if path == "-" {
        return Ok(Box::new(BufWriter::new(io::stdout().lock())));
    }
    let file = File::create(path).map_err(|e| Failure::Io(format!("{path}: {e}")))?;
    Ok(Box::new(BufWriter::new(file)))
}

fn emit<R: CsvRecord>(path: &str, rows: &[R]) -> Result<(), Failure> {
    let mut out = open_output(path)?;
    write_csv(&mut out, rows).map_err(|e| Failure::Io(format!("{path}: {e}")))
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Sweep {
            size,
            grid,
            optimizer,
            out,
        } => {
            let spec = SweepSpec {
                params: size.params()?,
                alpha_points: grid.0,
                theta_points: grid.1,
                optimizer: optimizer.config(),
            };
            spec.validate()?;
            let mut sink = open_output(&out)?;
            let rows = run_sweep(&spec)?;
            write_csv(&mut sink, &rows).map_err(|e| Failure::Io(format!("{out}: {e}")))
        }
        Command::Trajectory {
            size,
            strategy,
            steps,
            optimizer,
            out,
        } => {
            let params = size.params()?;
            let strategy: Strategy = strategy.parse()?;
            let cfg = optimizer.config();
            cfg.validate()?;
            let steps = steps.unwrap_or_else(|| classical_iterations(&params) + 1);
            if steps == 0 {
                return Err(Failure::Usage("--steps must be at least 1".into()));
            }
            let rows = run_trajectory(&params, strategy, steps, &cfg)?;
            emit(&out, &rows)
        }
        Command::Threshold { n, qubits, out } => {
            let sizes: Vec<u64> = if !n.is_empty() {
                n
            } else if !qubits.is_empty() {
                qubits
                    .iter()
                    .map(|&q| BetaParams::from_qubits(q).map(|p| p.n()))
                    .collect::<Result<_, _>>()?
            } else {
                (2..=20).map(|q| 1u64 << q).collect()
            };
            let rows = threshold_table(&sizes)?;
            emit(&out, &rows)
        }
        Command::Verify {
            qubits,
            samples,
            seed,
            phi,
            out,
        } => {
            let cfg = VerifyConfig {
                max_qubits: qubits,
                samples,
                seed,
                phi,
            };
            let report = run_verification(&cfg)?;
            emit(&out, &report.rows)?;
            let max = report.max_discrepancy();
            if report.passed() {
                eprintln!("max probability discrepancy {max:e}: ok");
                Ok(())
            } else {
                Err(Failure::Verify(format!("max probability discrepancy {max:e} exceeds 1e-10")))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Verify(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(EXIT_VERIFY)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("i/o error: {msg}");
            ExitCode::from(EXIT_IO)
        }
    }
}
