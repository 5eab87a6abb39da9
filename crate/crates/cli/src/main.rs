mod args;
mod commands;
mod error;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{CommandFactory, Parser};
use serde_json::{json, Value};

use args::{Cli, Command};
use error::CliError;

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Render(_) => "render",
        Command::Ray(_) => "ray",
        Command::Land(_) => "land",
        Command::Rotset(_) => "rotset",
        Command::Pcf(_) => "pcf",
        Command::Symmetry(_) => "symmetry",
        Command::Boettcher(_) => "boettcher",
        Command::Bang(_) => "bang",
        Command::Replay(_) => "replay",
        Command::Curve(_) => "curve",
        Command::VerifyAll(_) => "verify-all",
        Command::Man => "man",
    }
}

fn output_paths(c: &Command) -> Vec<std::path::PathBuf> {
    match c {
        Command::Render(a) => std::iter::once(a.out.clone()).chain(a.svg.clone()).collect(),
        Command::Ray(a) => a.csv.iter().cloned().collect(),
        Command::Pcf(a) => a.csv.iter().cloned().collect(),
        _ => Vec::new(),
    }
}

fn emit(cli: &Cli, envelope: &Value) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(envelope)?;
    text.push('\n');
    match &cli.global.json {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::io(path, e)),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::computation("io", e.to_string())),
    }
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    let mut cfg = cli.global.run_config();
    cfg.validate()?;
    if let Some(n) = cli.global.threads {
        if n == 0 {
            return Err(CliError::usage("--threads must be positive"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::computation("threads", e.to_string()))?;
    }
    cfg.outputs = output_paths(&cli.command);
    if let Some(p) = &cli.global.json {
        cfg.outputs.push(p.clone());
    }

    let start = Instant::now();
    let mut passed = true;
    let result = match &cli.command {
        Command::Render(a) => commands::render(a, &cfg)?,
        Command::Ray(a) => commands::ray(a, &cfg)?,
        Command::Land(a) => commands::land(a, &cfg)?,
        Command::Rotset(a) => commands::rotset(a)?,
        Command::Pcf(a) => commands::pcf(a, &cfg)?,
        Command::Symmetry(a) => commands::symmetry(a)?,
        Command::Boettcher(a) => commands::boettcher(a, &cfg)?,
        Command::Bang(a) => commands::bang(a, &cfg)?,
        Command::Replay(a) => commands::replay(a)?,
        Command::Curve(a) => commands::curve(a)?,
        Command::VerifyAll(a) => {
            let report = commands::verify_all(a, &cfg)?;
            passed = report.passed;
            serde_json::to_value(&report)?
        }
        Command::Man => {
            let man = clap_mangen::Man::new(Cli::command());
            man.render(&mut std::io::stdout())
                .map_err(|e| CliError::computation("io", e.to_string()))?;
            return Ok(true);
        }
    };
    let wall = (!cli.global.no_timing).then(|| start.elapsed().as_secs_f64());
    let envelope = json!({
        "tool": "multibrot",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command_name(&cli.command),
        "config": cfg,
        "wall_time_seconds": wall,
        "result": result,
    });
    emit(cli, &envelope)?;
    Ok(passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.global.verbose {
        0 => "warn",
        1 => "info",
        2 => "debug",
        _ => "trace",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code as u8)
        }
    }
}
