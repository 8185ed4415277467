use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use optolev::pulse::{phonon_trace, write_trace_csv};
use optolev::report::{evaluate_scenario, scenario_protocol, sweep_output, to_toml_sig6};
use optolev::{Error, Scenario};

/// Feasibility calculator for cavity optomechanics with levitated objects.
#[derive(Debug, Parser)]
#[command(name = "optolev", version)]
struct Cli {
    /// Write the result to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Print nothing but the result.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a scenario file and print its feasibility report.
    Feasibility { scenario: PathBuf },
    /// Print the phonon number during a single-photon swap as CSV.
    Trace {
        scenario: PathBuf,
        #[arg(long)]
        g_over_kappa: Option<f64>,
        #[arg(long)]
        sigma_over_kappa: Option<f64>,
    },
    /// Evaluate a scenario for each value of one parameter.
    Sweep {
        scenario: PathBuf,
        #[arg(long)]
        axis: String,
        /// Comma-separated values in the axis unit.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        values: Vec<f64>,
    },
    /// Evaluate a built-in scenario.
    Preset {
        /// sphere-appendix-h, rod-translation or rod-rotation
        name: String,
        /// Print the scenario file instead of its report.
        #[arg(long)]
        scenario: bool,
    },
}

fn emit(out: Option<&Path>, text: &[u8]) -> Result<(), Error> {
    let io_err = |e: io::Error| Error::Scenario(format!("writing output: {e}"));
    match out {
        Some(path) => File::create(path).and_then(|mut f| f.write_all(text)).map_err(io_err),
        None => io::stdout().lock().write_all(text).map_err(io_err),
    }
}

fn run(cli: &Cli) -> Result<(), Error> {
    let status = |msg: String| {
        if !cli.quiet {
            eprintln!("{msg}");
        }
    };
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Feasibility { scenario } => {
            let s = Scenario::from_file(scenario)?;
            status(format!("evaluating {}", scenario.display()));
            let report = evaluate_scenario(&s)?;
            emit(out, to_toml_sig6(&report)?.as_bytes())
        }
        Command::Trace {
            scenario,
            g_over_kappa,
            sigma_over_kappa,
        } => {
            let s = Scenario::from_file(scenario)?;
            let protocol = scenario_protocol(&s, *g_over_kappa, *sigma_over_kappa)?;
            status(format!(
                "tracing g/κ = {:.6}, σ/κ = {:.6} over {} points",
                protocol.g / protocol.kappa,
                protocol.sigma / protocol.kappa,
                protocol.times.len()
            ));
            let trace = phonon_trace(&protocol)?;
            let mut buf = Vec::new();
            write_trace_csv(&trace, protocol.kappa, &mut buf)?;
            status(format!("peak ⟨b†b⟩ = {:.6} at κt = {:.6}", trace.peak_value, trace.peak_time * protocol.kappa));
            emit(out, &buf)
        }
        Command::Sweep { scenario, axis, values } => {
            let s = Scenario::from_file(scenario)?;
            status(format!("sweeping {axis} over {} values", values.len()));
            let result = sweep_output(&s, axis, values)?;
            emit(out, to_toml_sig6(&result)?.as_bytes())
        }
        Command::Preset { name, scenario } => {
            let s = Scenario::preset(name)?;
            if *scenario {
                return emit(out, s.to_toml_string()?.as_bytes());
            }
            status(format!("evaluating preset {name}"));
            emit(out, to_toml_sig6(&evaluate_scenario(&s)?)?.as_bytes())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_numerical() { 2 } else { 1 })
        }
    }
}
