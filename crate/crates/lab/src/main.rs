use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use vilenkin_lab::checks::{run_suite, thresholds, CheckOptions, CRITERIA};
use vilenkin_lab::config::{ExperimentConfig, Format};
use vilenkin_lab::{experiments, resolve_cell_cap, LabError, EXIT_CHECK, EXIT_INPUT, EXIT_OK};

#[derive(Parser)]
#[command(
    name = "vilenkin-lab",
    version,
    about = "Experiments on Vilenkin groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment config and write its table.
    Run {
        config: PathBuf,
        /// Output file; stdout when neither this nor the config names one.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_parser = parse_format)]
        format: Option<Format>,
        /// Largest M_N allowed (also VILENKIN_CELL_CAP).
        #[arg(long = "cells-cap")]
        cells_cap: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run the numbered invariant suite.
    Check {
        /// Comma-separated criterion numbers; all when omitted.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
        /// Use the relaxed speedup threshold for the transform timing gate.
        #[arg(long)]
        relax_perf: bool,
    },
}

fn parse_format(s: &str) -> Result<Format, String> {
    match s {
        "csv" => Ok(Format::Csv),
        "json" => Ok(Format::Json),
        other => Err(format!("unknown format {other:?} (csv or json)")),
    }
}

fn run(
    path: PathBuf,
    out: Option<PathBuf>,
    format: Option<Format>,
    cells_cap: Option<usize>,
    seed: Option<u64>,
) -> Result<i32, LabError> {
    let mut config = ExperimentConfig::load(&path)?;
    if let Some(seed) = seed {
        config.seed = seed;
    }
    let cap = resolve_cell_cap(cells_cap)?;
    let table = experiments::run(&config, cap)?;
    let hash = config.hash();
    let text = match format.unwrap_or(config.output.format) {
        Format::Csv => table.to_csv(&hash),
        Format::Json => table.to_json(&hash),
    };
    match out.or_else(|| config.output.path.clone()) {
        Some(target) => std::fs::write(target, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    for a in &table.assertions {
        eprintln!(
            "[{}] {}: {}",
            if a.passed { "PASS" } else { "FAIL" },
            a.name,
            a.detail
        );
    }
    Ok(if table.all_passed() {
        EXIT_OK
    } else {
        EXIT_CHECK
    })
}

fn check(only: Vec<u8>, relax_perf: bool) -> i32 {
    let ids: Vec<u8> = if only.is_empty() {
        CRITERIA.iter().map(|(id, _)| *id).collect()
    } else {
        only
    };
    let start = std::time::Instant::now();
    let results = run_suite(&ids, &CheckOptions { relax_perf }, |r| {
        println!("{}", r.line())
    });
    let seconds = start.elapsed().as_secs_f64();
    let failed = results.iter().filter(|r| !r.passed).count();
    let budget = thresholds().suite.runtime_seconds;
    println!(
        "{} of {} criteria passed in {seconds:.1} s (budget {budget} s)",
        results.len() - failed,
        results.len()
    );
    if failed == 0 && seconds < budget {
        EXIT_OK
    } else {
        EXIT_CHECK
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT as u8 } else { 0 });
        }
    };
    let code = match cli.command {
        Command::Run {
            config,
            out,
            format,
            cells_cap,
            seed,
        } => run(config, out, format, cells_cap, seed).unwrap_or_else(|e| {
            eprintln!("error: {e}");
            e.exit_code()
        }),
        Command::Check { only, relax_perf } => check(only, relax_perf),
    };
    ExitCode::from(code as u8)
}
