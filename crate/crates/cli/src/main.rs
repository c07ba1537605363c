//! `cqed`: run circuit-QED experiments and write their data as CSV or JSON.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::*;
use output::{write_atomic, Format};

#[derive(Debug, Parser)]
#[command(name = "cqed", version, about = "Superconducting circuit QED experiments")]
struct Cli {
    /// Output file; defaults to `<command>.<format>` in the working directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value = "csv")]
    format: Format,

    /// Seed for Monte-Carlo commands.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cooper-pair-box levels against gate charge.
    Spectrum(SpectrumArgs),
    /// Resonant Rabi oscillation.
    Rabi(RabiArgs),
    /// Noise-free Ramsey fringes.
    Ramsey(RamseyArgs),
    /// Quadrature and number statistics of an evolving coherent state.
    Coherent(CoherentArgs),
    /// Tilted washboard potential.
    Washboard(WashboardArgs),
    /// Flux-tunable SQUID critical current.
    Squid(SquidArgs),
    /// Flux-qubit double-well potential.
    Fluxwell(FluxwellArgs),
    /// Jaynes-Cummings vacuum Rabi oscillation.
    Jc(JcArgs),
    /// Energy decay, analytic and Monte-Carlo.
    Decay(DecayArgs),
    /// Ramsey ensemble under gap noise or energy decay.
    Dephase(DephaseArgs),
    /// Two-qubit Bell-state correlation tables.
    Bell(BellArgs),
    /// Charge dispersion against E_J/E_C.
    Transmon(TransmonArgs),
    /// Two-island Josephson tunnelling equations.
    TunnelOde(TunnelOdeArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Spectrum(_) => "spectrum",
            Command::Rabi(_) => "rabi",
            Command::Ramsey(_) => "ramsey",
            Command::Coherent(_) => "coherent",
            Command::Washboard(_) => "washboard",
            Command::Squid(_) => "squid",
            Command::Fluxwell(_) => "fluxwell",
            Command::Jc(_) => "jc",
            Command::Decay(_) => "decay",
            Command::Dephase(_) => "dephase",
            Command::Bell(_) => "bell",
            Command::Transmon(_) => "transmon",
            Command::TunnelOde(_) => "tunnel-ode",
        }
    }
}

const EXIT_USAGE: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };

    let name = cli.command.name();
    let mut table = match run(&cli.command, cli.seed) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {}: {e}", e.name());
            let code = if e.is_numerical() { EXIT_NUMERICAL } else { EXIT_USAGE };
            return ExitCode::from(code);
        }
    };
    let mut header = output::OutputTable::new(&[]);
    header
        .meta("command", name)
        .meta("version", env!("CARGO_PKG_VERSION"))
        .meta("seed", cli.seed);
    header.metadata.append(&mut table.metadata);
    table.metadata = header.metadata;

    let path = cli
        .out
        .unwrap_or_else(|| PathBuf::from(format!("{name}.{}", cli.format.extension())));
    if let Err(e) = write_atomic(&path, &table.render(cli.format)) {
        eprintln!("error: Io: {}: {e}", path.display());
        return ExitCode::from(EXIT_USAGE);
    }
    println!(
        "{name}: wrote {} rows x {} columns to {}",
        table.rows.len(),
        table.columns.len(),
        path.display()
    );
    ExitCode::SUCCESS
}
