use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use kicked_ising::cli::{
    entropy_exit_status, render_concurrence_csv, render_concurrence_json, render_entropy_csv,
    render_entropy_json, render_verify_json, render_verify_text, render_vn_json, render_vn_text,
    run_concurrence_scan, run_entropy_profile, run_verify, run_vn_table, vn_exit_status,
    verify_exit_status, CliFailure, ExperimentConfig, OutputFormat,
};

/// Kicked-Ising entanglement protocol: simulate, cross-check, export.
#[derive(Parser)]
#[command(name = "kicked-ising", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Block entropy versus kick count, against the closed-form oracle
    EntropyProfile(CommonArgs),
    /// Pair concurrences versus kick count, against the prediction
    ConcurrenceScan(CommonArgs),
    /// Interaction operators V_n: recursion next to closed forms
    VnTable(CommonArgs),
    /// Factorization, equivalence, channel, entropy, and erratum checks
    Verify(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Chain length L (even, >= 4) [default: 8]
    #[arg(long)]
    length: Option<usize>,
    /// Boundary condition: open | closed [default: open]
    #[arg(long)]
    boundary: Option<String>,
    /// Block A size M [default: L/2]
    #[arg(long)]
    block: Option<usize>,
    /// Number of kicks n_max [default: 2L]
    #[arg(long)]
    kicks: Option<usize>,
    /// Backend: dense | stabilizer | both [default: both]
    #[arg(long)]
    backend: Option<String>,
    /// Output format: csv | json (vn-table and verify render csv as text)
    /// [default: csv]
    #[arg(long)]
    format: Option<String>,
    /// Output path [default: stdout]
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for the randomized cross-checks [default: 7]
    #[arg(long)]
    seed: Option<u64>,
    /// JSON config file mirroring the experiment config; command-line flags
    /// override its values
    #[arg(long)]
    config: Option<PathBuf>,
}

impl CommonArgs {
    fn resolve(&self) -> Result<ExperimentConfig, CliFailure> {
        let mut cfg = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    CliFailure::Usage(format!("cannot read config {}: {e}", path.display()))
                })?;
                serde_json::from_str::<ExperimentConfig>(&text).map_err(|e| {
                    CliFailure::Usage(format!("invalid config {}: {e}", path.display()))
                })?
            }
            None => ExperimentConfig::default(),
        };
        if let Some(l) = self.length {
            cfg.length = l;
        }
        if let Some(b) = &self.boundary {
            cfg.boundary = b.parse().map_err(|e: kicked_ising::Error| CliFailure::Usage(e.to_string()))?;
        }
        if self.block.is_some() {
            cfg.block = self.block;
        }
        if self.kicks.is_some() {
            cfg.kicks = self.kicks;
        }
        if let Some(b) = &self.backend {
            cfg.backend =
                b.parse().map_err(|e: kicked_ising::Error| CliFailure::Usage(e.to_string()))?;
        }
        if let Some(f) = &self.format {
            cfg.format =
                f.parse().map_err(|e: kicked_ising::Error| CliFailure::Usage(e.to_string()))?;
        }
        if let Some(o) = &self.out {
            cfg.out = Some(o.clone());
        }
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        Ok(cfg)
    }
}

fn emit(cfg: &ExperimentConfig, payload: &str) -> Result<(), CliFailure> {
    match &cfg.out {
        Some(path) => std::fs::write(path, payload)
            .map_err(|e| CliFailure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{payload}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliFailure> {
    match cli.command {
        Command::EntropyProfile(args) => {
            let cfg = args.resolve()?;
            let report = run_entropy_profile(&cfg)?;
            let payload = match cfg.format {
                OutputFormat::Csv => render_entropy_csv(&report),
                OutputFormat::Json => render_entropy_json(&report),
            };
            emit(&cfg, &payload)?;
            entropy_exit_status(&report)
        }
        Command::ConcurrenceScan(args) => {
            let cfg = args.resolve()?;
            let report = run_concurrence_scan(&cfg)?;
            let payload = match cfg.format {
                OutputFormat::Csv => render_concurrence_csv(&report),
                OutputFormat::Json => render_concurrence_json(&report),
            };
            emit(&cfg, &payload)
        }
        Command::VnTable(args) => {
            let cfg = args.resolve()?;
            let rows = run_vn_table(&cfg)?;
            let payload = match cfg.format {
                OutputFormat::Csv => render_vn_text(&rows),
                OutputFormat::Json => render_vn_json(&rows),
            };
            emit(&cfg, &payload)?;
            vn_exit_status(&rows)
        }
        Command::Verify(args) => {
            let cfg = args.resolve()?;
            let report = run_verify(&cfg)?;
            let payload = match cfg.format {
                OutputFormat::Csv => render_verify_text(&report),
                OutputFormat::Json => render_verify_json(&report),
            };
            emit(&cfg, &payload)?;
            verify_exit_status(&report)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.exit_code() as u8)
        }
    }
}
