use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use casimir_iso::{CliError, Command, RunConfig};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Cmd {
    Permittivity,
    Eta,
    Delta,
    Validate,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::Permittivity => Command::Permittivity,
            Cmd::Eta => Command::Eta,
            Cmd::Delta => Command::Delta,
            Cmd::Validate => Command::Validate,
        }
    }
}

/// Thermal Casimir force differences for isoelectronic sphere-plate setups.
#[derive(Debug, Parser)]
#[command(name = "casimir-iso", version)]
struct Cli {
    command: Cmd,

    /// key = value config file; flags override its values
    #[arg(long)]
    config: Option<PathBuf>,

    /// Setup preset: fig3, fig4_5, fig6bis, fig6, fig7
    #[arg(long)]
    setup: Option<String>,

    /// Separation grid, μm
    #[arg(long)]
    a_start: Option<String>,
    #[arg(long)]
    a_stop: Option<String>,
    #[arg(long)]
    a_points: Option<String>,
    /// lin or log
    #[arg(long)]
    a_scale: Option<String>,

    /// Imaginary-frequency grid for `permittivity`, eV
    #[arg(long)]
    xi_start: Option<String>,
    #[arg(long)]
    xi_stop: Option<String>,
    #[arg(long)]
    xi_points: Option<String>,
    #[arg(long)]
    xi_scale: Option<String>,

    /// Material spec (preset name or e.g. drude:8.9,0.035)
    #[arg(long)]
    material: Option<String>,
    /// Second half-space for `eta`
    #[arg(long)]
    partner: Option<String>,
    /// Optical data table (two columns: ω in eV, ε″)
    #[arg(long)]
    table: Option<String>,
    /// Temperature for `eta`, K
    #[arg(long)]
    temperature: Option<String>,

    /// drude, plasma or both
    #[arg(long)]
    prescription: Option<String>,
    /// full, unity or both
    #[arg(long)]
    mu: Option<String>,

    #[arg(long)]
    rel_tol: Option<String>,
    #[arg(long)]
    l_max_cap: Option<String>,

    /// Output file; stdout when absent
    #[arg(long)]
    out: Option<String>,
}

fn build_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let command: Command = cli.command.into();
    let mut config = match &cli.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|source| CliError::Read {
                path: path.clone(),
                source,
            })?;
            RunConfig::from_text(command, &text)?
        }
        None => RunConfig::new(command),
    };
    config.command = command;
    let flags = [
        ("setup.preset", &cli.setup),
        ("grid.a_start", &cli.a_start),
        ("grid.a_stop", &cli.a_stop),
        ("grid.a_points", &cli.a_points),
        ("grid.a_scale", &cli.a_scale),
        ("grid.xi_start", &cli.xi_start),
        ("grid.xi_stop", &cli.xi_stop),
        ("grid.xi_points", &cli.xi_points),
        ("grid.xi_scale", &cli.xi_scale),
        ("materials.material", &cli.material),
        ("materials.partner", &cli.partner),
        ("materials.table", &cli.table),
        ("materials.temperature", &cli.temperature),
        ("model.prescription", &cli.prescription),
        ("model.mu", &cli.mu),
        ("quadrature.rel_tol", &cli.rel_tol),
        ("quadrature.l_max_cap", &cli.l_max_cap),
        ("output.out", &cli.out),
    ];
    for (key, value) in flags {
        if let Some(v) = value {
            config
                .set(key, v)
                .map_err(|e| CliError::Usage(format!("--{}: {e}", flag_name(key))))?;
        }
    }
    Ok(config)
}

fn flag_name(key: &str) -> String {
    let tail = key.rsplit('.').next().unwrap_or(key);
    match key {
        "setup.preset" => "setup".into(),
        _ => tail.replace('_', "-"),
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
    let result = build_config(&cli).and_then(|c| casimir_iso::run(&c));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("casimir-iso: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
