//! `nrow`: simulate games, run sweeps, solve small boards, serve the play API.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use nrow_core::selftest;
use nrow_core::sweep::rows_to_csv;
use nrow_core::{
    play_game_with, run_sweep, solve, EngineError, GameConfig, GameRecord, Mode, Schedule, SolverError, SolverOptions,
    SweepSpec,
};
use nrow_service::{AppState, Store};

const EXIT_SELFTEST_FAILED: u8 = 1;
const EXIT_STRATEGY_BUG: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;
const EXIT_USAGE: u8 = 64;
const EXIT_BAD_SPEC: u8 = 65;

#[derive(Parser)]
#[command(
    name = "nrow",
    version,
    about = "Accelerated n-in-a-row: simulator, sweeps, solver and play server"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Play one game between two strategies.
    Simulate(SimulateArgs),
    /// Run every (n, matchup, seed) cell of a spec file and write a CSV table.
    Sweep(SweepArgs),
    /// Search for the exact winner of a small game.
    Solve(SolveArgs),
    /// Serve the JSON play API.
    Serve(ServeArgs),
    /// Run the built-in consistency checks.
    Selftest,
}

#[derive(Args)]
struct SimulateArgs {
    /// Winning run length.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    n: u64,
    /// `identity`, `const:k`, or `evenA,evenB,oddA,oddC`.
    #[arg(long, default_value = "identity")]
    schedule: Schedule,
    #[arg(long)]
    maker: String,
    #[arg(long)]
    breaker: String,
    #[arg(long)]
    seed: u64,
    /// Last turn played if nobody has won. Defaults to 2n + 1.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    cap: Option<u64>,
    /// `MB` (Maker-Breaker) or `TW` (two winners).
    #[arg(long, default_value = "MB")]
    mode: Mode,
    /// Write the transcript here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the per-turn L_t and A_r^t table here.
    #[arg(long)]
    diagnostics: Option<PathBuf>,
    /// Thresholds r reported in the diagnostics table.
    #[arg(long, value_delimiter = ',', default_value = "1,2,4")]
    r: Vec<usize>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    spec: PathBuf,
    /// Write the table here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Fill the wall_ms column with measured times. Output is then no
    /// longer byte-identical between runs.
    #[arg(long)]
    wall_clock: bool,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    n: u64,
    /// Search radius around the claimed cells. Defaults to n.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    radius: Option<u64>,
    #[arg(long, default_value_t = SolverOptions::default().node_cap)]
    node_cap: u64,
    /// Disable the transposition table.
    #[arg(long)]
    no_memo: bool,
}

#[derive(Args)]
struct ServeArgs {
    #[arg(long, default_value = "127.0.0.1")]
    host: String,
    #[arg(long, default_value_t = 8080)]
    port: u16,
    /// Persist games here and restore them on start.
    #[arg(long)]
    data_dir: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Simulate(args) => simulate(args),
        Command::Sweep(args) => sweep(args),
        Command::Solve(args) => solve_cmd(args),
        Command::Serve(args) => serve(args),
        Command::Selftest => run_selftest(),
    }
}

fn usage(msg: impl std::fmt::Display) -> u8 {
    eprintln!("error: {msg}");
    EXIT_USAGE
}

fn write_output(path: Option<&PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => io::stdout()
            .write_all(text.as_bytes())
            .context("writing to standard output"),
    }
}

fn diagnostics_table(record: &GameRecord, thresholds: &[usize]) -> String {
    let mut out = String::from("t,L_t");
    for r in thresholds {
        out.push_str(&format!(",A_{r}"));
    }
    out.push('\n');
    for s in &record.timeline {
        out.push_str(&format!("{},{}", s.turn, s.l_t));
        for (_, count) in &s.a_r {
            out.push_str(&format!(",{count}"));
        }
        out.push('\n');
    }
    out
}

fn summary(record: &GameRecord) -> String {
    let opt = |v: Option<usize>| v.map_or("none".to_string(), |t| t.to_string());
    let winner = match (&record.winner, record.win_time) {
        (Some(w), _) => w.color.letter().to_string(),
        (None, Some(_)) => "R".to_string(),
        (None, None) => "none".to_string(),
    };
    format!(
        "win_time={} winner={} max_L={} truncated_at={}",
        opt(record.win_time),
        winner,
        record.max_l(),
        opt(record.truncated_at)
    )
}

fn simulate(args: SimulateArgs) -> Result<u8> {
    let n = args.n as usize;
    let config = match GameConfig::new(n, args.schedule, args.mode) {
        Ok(c) => c,
        Err(e) => return Ok(usage(e)),
    };
    let cap = args.cap.map_or(2 * n + 1, |c| c as usize);
    let record = match play_game_with(&config, &args.maker, &args.breaker, args.seed, cap, &args.r) {
        Ok(r) => r,
        Err(e @ EngineError::StrategyBug { .. }) => {
            eprintln!("error: {e}");
            return Ok(EXIT_STRATEGY_BUG);
        }
        Err(e) => return Ok(usage(e)),
    };
    let transcript = record.transcript();
    match &args.out {
        Some(path) => fs::write(path, &transcript).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{transcript}"),
    }
    if let Some(path) = &args.diagnostics {
        fs::write(path, diagnostics_table(&record, &args.r)).with_context(|| format!("writing {}", path.display()))?;
    }
    println!("{}", summary(&record));
    Ok(0)
}

fn sweep(args: SweepArgs) -> Result<u8> {
    let text = fs::read_to_string(&args.spec).with_context(|| format!("reading {}", args.spec.display()))?;
    let spec: SweepSpec = match text.parse() {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {}: {e}", args.spec.display());
            return Ok(EXIT_BAD_SPEC);
        }
    };
    let rows = run_sweep(&spec);
    write_output(args.out.as_ref(), &rows_to_csv(&rows, args.wall_clock))?;
    Ok(0)
}

fn solve_cmd(args: SolveArgs) -> Result<u8> {
    let options = SolverOptions {
        radius: args.radius.map(|r| r as usize),
        node_cap: args.node_cap,
        memo: !args.no_memo,
    };
    match solve(args.n as usize, &options) {
        Ok(verdict) => {
            print!("{}", verdict.report());
            eprintln!("{}", verdict.exactness_note);
            Ok(0)
        }
        Err(e @ SolverError::Inconclusive { .. }) => {
            eprintln!("{e}");
            Ok(EXIT_INCONCLUSIVE)
        }
        Err(e) => Ok(usage(e)),
    }
}

fn serve(args: ServeArgs) -> Result<u8> {
    let state = match &args.data_dir {
        Some(dir) => {
            let store = Store::open(dir).with_context(|| format!("opening {}", dir.display()))?;
            let (state, problems) = AppState::persistent(store);
            for p in problems {
                eprintln!("warning: skipped stored game {p}");
            }
            eprintln!("restored {} game(s) from {}", state.game_count(), dir.display());
            state
        }
        None => AppState::in_memory(),
    };
    let addr = format!("{}:{}", args.host, args.port);
    let runtime = tokio::runtime::Runtime::new().context("starting the async runtime")?;
    eprintln!("listening on http://{addr}");
    runtime
        .block_on(nrow_service::serve(&addr, state))
        .with_context(|| format!("serving on {addr}"))?;
    Ok(0)
}

fn run_selftest() -> Result<u8> {
    let reports = selftest::run_all();
    for r in &reports {
        println!("{r}");
    }
    Ok(if reports.iter().all(|r| r.passed()) {
        0
    } else {
        EXIT_SELFTEST_FAILED
    })
}
