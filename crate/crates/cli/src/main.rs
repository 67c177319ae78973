use std::io::{Read, Write};
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use osserman_cli::{cmd_gen, cmd_realize, cmd_report, cmd_verify, CliError, Report, RunConfig};

/// Exact verification of nilpotent Jordan Osserman curvature models.
///
/// Defaults: --samples 200, --seed 0, --bound 10, --points 20. Exit codes:
/// 0 expectations met, 1 expectations violated, 2 input or parse error.
#[derive(Debug, Parser)]
#[command(name = "osserman", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write the spec file(s) of a family
    Gen(RunConfig),
    /// Check identities, signature and spacelike/timelike Jordan verdicts
    Verify(RunConfig),
    /// Check that a polynomial metric realizes the model curvature pattern
    Realize(RunConfig),
    /// Render a saved JSON report as JSON or markdown
    Report(RunConfig),
}

fn write_out(path: Option<&Path>, contents: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, contents).map_err(|source| CliError::Io { path: p.to_path_buf(), source }),
        None => std::io::stdout()
            .write_all(contents.as_bytes())
            .map_err(|source| CliError::Io { path: "<stdout>".into(), source }),
    }
}

fn finish(config: &RunConfig, report: &Report, started: Instant) -> Result<ExitCode, CliError> {
    write_out(config.out.as_deref(), &report.render(config.format))?;
    eprintln!("elapsed: {:.3}s", started.elapsed().as_secs_f64());
    Ok(if report.expectations_met() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let started = Instant::now();
    match cli.command {
        Command::Gen(config) => {
            for out in cmd_gen(&config)? {
                write_out(out.path.as_deref(), &out.contents)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(config) => finish(&config, &cmd_verify(&config)?, started),
        Command::Realize(config) => finish(&config, &cmd_realize(&config)?, started),
        Command::Report(config) => {
            let text = cmd_report(&config, || {
                let mut s = String::new();
                std::io::stdin().read_to_string(&mut s)?;
                Ok(s)
            })?;
            write_out(config.out.as_deref(), &text)?;
            Ok(ExitCode::SUCCESS)
        }
    }
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
