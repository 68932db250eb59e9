//! `ghc`: build, verify and attack garden-hose games from the command line.
//!
//! Exit codes: 0 when everything checked out, 1 when a check found a
//! counterexample, 2 for usage, parse and I/O errors.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use gardenhose::pbp::PbpError;
use gardenhose::quantum::QuantumError;
use gardenhose::tm::TmError;
use gardenhose::GameError;

#[derive(Parser)]
#[command(name = "ghc", version, about = "Garden-hose games: constructions, compilers, bounds and attacks")]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Append the wall time to the report (makes output run-dependent).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build one of the explicit constructions and write it to a file.
    Build(BuildArgs),
    /// Check that a game computes a function on every input pair.
    Verify(VerifyArgs),
    /// Follow the water for one input pair.
    Eval(EvalArgs),
    /// Emit the bipartite diagram of `G(x, y)` in DOT.
    Render(RenderArgs),
    /// Compile a netlist into a game through a width-5 branching program.
    CompileCircuit(CompileCircuitArgs),
    /// Check and compile a reversible, input-oblivious machine into a game.
    CompileTm(CompileTmArgs),
    /// Injectivity and the size lower bounds.
    Bounds(BoundsArgs),
    /// Exact garden-hose complexity of a tiny function by exhaustive search.
    Search(SearchArgs),
    /// Simulate the teleportation attack a game describes.
    Attack(AttackArgs),
    /// Mutually unbiased bases and the attack on the MUB protocol.
    Mub(MubArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    Xor,
    Eq,
    Ip,
    Maj,
    /// Majority with the "greater than" shortcut for the first threshold.
    MajOpt,
    Generic,
}

#[derive(Args)]
struct BuildArgs {
    #[arg(value_enum)]
    kind: Construction,
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// Named function (eq, ip, maj, xor, and, zero, one) or truth-table
    /// file; required for `generic`.
    #[arg(long = "fn")]
    function: Option<String>,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(short, long)]
    game: PathBuf,
    #[arg(long = "fn")]
    function: String,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(short, long)]
    game: PathBuf,
    /// Alice's input, MSB-first bitstring.
    #[arg(short)]
    x: String,
    #[arg(short)]
    y: String,
}

#[derive(Args)]
struct RenderArgs {
    #[arg(short, long)]
    game: PathBuf,
    #[arg(short)]
    x: String,
    #[arg(short)]
    y: String,
    /// Write the DOT file here and print a report; without it the DOT text
    /// goes to stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CompileCircuitArgs {
    #[arg(short, long)]
    input: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Skip the exhaustive comparison of program, game and circuit.
    #[arg(long)]
    no_verify: bool,
}

#[derive(Args)]
struct CompileTmArgs {
    /// Machine description file.
    #[arg(short, long, conflicts_with = "sample", required_unless_present = "sample")]
    machine: Option<PathBuf>,
    /// Bundled machine: accept, parity, zigzag, eq, merge, branch.
    #[arg(long)]
    sample: Option<String>,
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    n: usize,
    #[arg(long = "fn")]
    function: Option<String>,
    #[command(subcommand)]
    which: BoundsCommand,
}

#[derive(Subcommand)]
enum BoundsCommand {
    /// Injectivity for Alice and for Bob (needs --fn).
    Injective,
    /// Smallest s with s·log₂ s ≥ n.
    Lb,
    /// Smallest size not excluded by counting games against functions.
    Counting,
    /// Exhaustive search (needs --fn).
    Search {
        #[arg(long, default_value_t = gardenhose::bounds::SEARCH_CAP)]
        cap: u32,
    },
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    n: usize,
    #[arg(long = "fn")]
    function: String,
    #[arg(long, default_value_t = gardenhose::bounds::SEARCH_CAP)]
    cap: u32,
    /// Write the optimal game here.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckModeArg {
    Stabilizer,
    Bell,
}

#[derive(Args)]
struct AttackArgs {
    #[arg(short, long)]
    game: PathBuf,
    /// Dense simulation of all qubits (default).
    #[arg(long, conflicts_with = "frame")]
    statevector: bool,
    /// Track only the Pauli frame, with sampled Bell outcomes.
    #[arg(long)]
    frame: bool,
    /// Runs per input pair.
    #[arg(long)]
    trials: usize,
    #[arg(long)]
    seed: u64,
    /// Function the exit side is checked against; defaults to the one the
    /// game computes.
    #[arg(long = "fn")]
    function: Option<String>,
    /// Also play the single-qubit protocol: honest, teleporting and
    /// measuring provers, `trials` rounds each.
    #[arg(long)]
    protocol: bool,
    #[arg(long, value_enum, default_value = "stabilizer")]
    check: CheckModeArg,
}

#[derive(Args)]
struct MubArgs {
    #[arg(long)]
    n: usize,
    #[command(subcommand)]
    which: MubCommand,
}

#[derive(Subcommand)]
enum MubCommand {
    /// Partition, unbiasedness and the Pauli permutation table.
    Check,
    /// Teleport `|e^a_x⟩` for every basis and index.
    Attack {
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    GameFile { path: PathBuf, source: GameError },
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Pbp(#[from] PbpError),
    #[error(transparent)]
    Tm(#[from] TmError),
    #[error(transparent)]
    Quantum(#[from] QuantumError),
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("GHC_THREADS") else {
        return Ok(());
    };
    let k: usize = v.trim().parse().ok().filter(|&k| k > 0).ok_or_else(|| {
        CliError::Usage(format!("GHC_THREADS must be a positive integer, got {v:?}"))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(k)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot configure thread pool: {e}")))
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let command = std::iter::once("ghc").chain(argv.iter().skip(1).map(String::as_str)).collect::<Vec<_>>().join(" ");
    let start = Instant::now();
    match commands::dispatch(cli.command, command) {
        Ok(commands::Output::Report(mut report)) => {
            if cli.timing {
                report.wall_ms = Some(start.elapsed().as_secs_f64() * 1e3);
            }
            print!("{}", if cli.json { report.to_json() } else { report.to_text() });
            ExitCode::from(report.exit_code() as u8)
        }
        Ok(commands::Output::Raw(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
