use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use halfspace_cli::dataset::{dataset_csv, GenSpec};
use halfspace_cli::run::{dispatch, load, Command, Report, RunConfig, Source};
use halfspace_cli::CliError;
use halfspace_core::rational::{parse_rational, Q};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Cmd {
    Depth,
    Median,
    Fsbp,
    Attack,
    Verify,
    Gen,
}

/// Exact halfspace depth, halfspace median, and breakdown point.
#[derive(Debug, Parser)]
#[command(name = "halfspace", version)]
struct Args {
    #[arg(value_enum)]
    command: Cmd,
    /// Dataset file (CSV or JSON) or inline CSV/JSON text.
    #[arg(long, conflicts_with = "gen")]
    input: Option<String>,
    /// Generated dataset: random_igp:n:d, tetrahedron_d3, nested_simplices_d3.
    #[arg(long)]
    gen: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    max_m: Option<usize>,
    /// Magnitude along the attack line; repeat for more.
    #[arg(long, value_parser = parse_q)]
    magnitude: Vec<Q>,
    /// Query point for `depth`, comma separated.
    #[arg(long)]
    point: Option<String>,
    /// Report (or dataset, for `gen`) destination; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Directory for plot-data series.
    #[arg(long)]
    plot_data: Option<PathBuf>,
    /// Add wall-clock time to the report.
    #[arg(long)]
    timing: bool,
}

fn parse_q(s: &str) -> Result<Q, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn config(args: &Args) -> Result<RunConfig, CliError> {
    let command = match args.command {
        Cmd::Depth => Command::Depth,
        Cmd::Median => Command::Median,
        Cmd::Fsbp => Command::Fsbp,
        Cmd::Attack => Command::Attack,
        Cmd::Verify => Command::Verify,
        Cmd::Gen => Command::Gen,
    };
    let source = match (&args.input, &args.gen) {
        (Some(i), None) => Source::Input(i.clone()),
        (None, Some(g)) => Source::Gen(g.parse::<GenSpec>()?),
        _ => return Err(CliError::Usage("give exactly one of --input or --gen".into())),
    };
    let point = args
        .point
        .as_deref()
        .map(|p| p.split(',').map(parse_q).collect::<Result<Vec<_>, _>>())
        .transpose()
        .map_err(CliError::Usage)?;
    Ok(RunConfig {
        seed: args.seed,
        max_m: args.max_m,
        magnitudes: args.magnitude.clone(),
        point,
        timing: args.timing,
        plot_data: args.plot_data.is_some(),
        ..RunConfig::new(command, source)
    })
}

fn write(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            println!("{}", text.trim_end());
            Ok(())
        }
    }
}

fn emit(args: &Args, cfg: &RunConfig, report: &Report) -> Result<(), CliError> {
    let csv_out = args
        .out
        .as_deref()
        .is_some_and(|p| p.extension().is_some_and(|e| e == "csv"));
    let text = if cfg.command == Command::Gen && csv_out {
        dataset_csv(&load(&cfg.source, cfg.seed)?)
    } else {
        serde_json::to_string_pretty(&report.json).expect("json values serialize") + "\n"
    };
    write(args.out.as_deref(), &text)?;
    if let Some(dir) = &args.plot_data {
        if !report.plot_data.is_empty() {
            std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
        }
        for (stem, value) in &report.plot_data {
            let body = serde_json::to_string_pretty(value).expect("json values serialize") + "\n";
            write(Some(&dir.join(format!("{stem}.json"))), &body)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let args = Args::parse();
    let result = config(&args).and_then(|cfg| {
        let report = dispatch(&cfg)?;
        emit(&args, &cfg, &report)?;
        Ok(report.passed)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
