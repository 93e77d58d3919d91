use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use monoq::campaign::{self, write_records};
use monoq::config::{env_seed, parse_grid, CampaignConfig, Mode, Overrides, StateClass, SEED_ENV};
use monoq::error::{CliError, CliResult};
use monoq::eval::evaluate;
use monoq::reproduce::{falpha_table, figure_rows, write_falpha, write_figure, Figure, FIGURE_ALPHA};
use monoq::statefile::load_state;
use monoq_core::measures::ALPHA_THEOREM_MIN;

#[derive(Parser)]
#[command(name = "monoq", version, about = "Rényi-α monogamy and polygamy bound checks for small qubit systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the applicable bound on one state file (JSON to stdout).
    Eval(EvalArgs),
    /// Write bound curves over μ as CSV.
    Reproduce(ReproduceArgs),
    /// Run a falsification campaign; exits 1 if any margin is below -tolerance.
    Fuzz(FuzzArgs),
    /// Print an f_α table as CSV.
    Falpha(FalphaArgs),
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long)]
    state: PathBuf,
    #[arg(long, default_value_t = ALPHA_THEOREM_MIN)]
    alpha: f64,
    /// μ ≥ 2 selects the monogamy bound, 0 ≤ μ ≤ 1 the polygamy bound.
    #[arg(long, default_value_t = 2.0)]
    mu: f64,
    #[arg(long, default_value = "A")]
    focus: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReproduceArgs {
    /// fig1 (monogamy, μ ∈ [2, 10]) or fig2 (polygamy, μ ∈ [0, 1]).
    #[arg(long)]
    figure: Figure,
    #[arg(long, default_value_t = FIGURE_ALPHA)]
    alpha: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FuzzArgs {
    /// Flat key = value file; command-line flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// monogamy, polygamy, lemma1, ckw or scalar.
    #[arg(long)]
    mode: Option<Mode>,
    #[arg(long)]
    states: Option<usize>,
    #[arg(long)]
    qubits: Option<usize>,
    /// haar, wclass or file.
    #[arg(long)]
    class: Option<StateClass>,
    /// State file for class `file`.
    #[arg(long)]
    state: Option<PathBuf>,
    /// Comma-separated α grid.
    #[arg(long)]
    alpha: Option<String>,
    /// Comma-separated μ grid (the exponent x in lemma1 and scalar modes).
    #[arg(long)]
    mu: Option<String>,
    /// Master seed; defaults to $MONOQ_SEED, then 0.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    tolerance: Option<f64>,
    #[arg(long)]
    focus: Option<String>,
    /// CSV file for the per-evaluation witness records.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FalphaArgs {
    #[arg(long, default_value = "0.8229,0.9,1,1.1,1.3027")]
    alpha: String,
    #[arg(long, default_value_t = 101)]
    points: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn output(path: Option<&Path>) -> CliResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| CliError::io(p, e))?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn write_json<T: serde::Serialize>(path: Option<&Path>, value: &T) -> CliResult<()> {
    let mut out = output(path)?;
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out).and_then(|_| out.flush()).map_err(|e| CliError::io("<output>", e))
}

fn fuzz(args: FuzzArgs) -> CliResult<ExitCode> {
    let cli = Overrides {
        mode: args.mode,
        n_states: args.states,
        n_qubits: args.qubits,
        alpha_grid: args.alpha.as_deref().map(parse_grid).transpose()?,
        mu_grid: args.mu.as_deref().map(parse_grid).transpose()?,
        seed: args.seed,
        state_class: args.class,
        state_file: args.state,
        focus: args.focus,
        tolerance: args.tolerance,
    };
    let file = args.config.as_deref().map(Overrides::from_file).transpose()?.unwrap_or_default();
    let env = env_seed(std::env::var(SEED_ENV).ok().as_deref())?;
    let cfg = CampaignConfig::resolve(cli.over(file), env)?;
    let outcome = campaign::run(&cfg)?;
    if let Some(p) = &args.out {
        write_records(output(Some(p))?, &cfg, &outcome.records)?;
    }
    write_json(None, &outcome.summary)?;
    Ok(ExitCode::from(outcome.exit_code() as u8))
}

fn run(cli: Cli) -> CliResult<ExitCode> {
    match cli.command {
        Command::Eval(a) => {
            let psi = load_state(&a.state)?;
            write_json(a.out.as_deref(), &evaluate(&psi, a.alpha, a.mu, &a.focus)?)?;
        }
        Command::Reproduce(a) => {
            let rows = figure_rows(a.figure, a.alpha)?;
            write_figure(output(a.out.as_deref())?, &rows)?;
        }
        Command::Fuzz(a) => return fuzz(a),
        Command::Falpha(a) => {
            let alphas = parse_grid(&a.alpha)?;
            let rows = falpha_table(&alphas, a.points)?;
            write_falpha(output(a.out.as_deref())?, &alphas, &rows)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
