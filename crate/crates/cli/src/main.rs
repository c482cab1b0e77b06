use clap::Parser;
use std::path::PathBuf;
use std::process::ExitCode;

use entangle_core::runner::{self, ScenarioConfig};
use entangle_core::Error;

/// Entanglement dynamics of two accelerated or heated atoms.
#[derive(Debug, Parser)]
#[command(name = "entangle", version)]
struct Args {
    /// Scenario or batch JSON file
    #[arg(long, conflicts_with = "preset")]
    config: Option<PathBuf>,

    /// Named figure preset (see --list-presets)
    #[arg(long)]
    preset: Option<String>,

    /// Output directory; overrides output_dir in the config
    #[arg(long)]
    out: Option<PathBuf>,

    /// Worker threads
    #[arg(long)]
    workers: Option<usize>,

    /// Print the preset names and exit
    #[arg(long)]
    list_presets: bool,
}

fn scenarios(args: &Args) -> Result<Vec<ScenarioConfig>, Error> {
    let mut list = match (&args.config, &args.preset) {
        (Some(path), None) => runner::load_config(path)?,
        (None, Some(name)) => runner::preset(name)
            .ok_or_else(|| Error::Config(format!("unknown preset `{name}`")))?,
        _ => return Err(Error::Config("give exactly one of --config or --preset".into())),
    };
    if args.out.is_some() {
        for c in &mut list {
            c.output_dir = None;
        }
    }
    Ok(list)
}

fn exit_code(e: &Error) -> u8 {
    if e.is_config() {
        1
    } else {
        2
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    if args.list_presets {
        for (name, about) in runner::PRESETS {
            println!("{name:<12} {about}");
        }
        return ExitCode::SUCCESS;
    }
    let list = match scenarios(&args) {
        Ok(l) => l,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let workers = args.workers.unwrap_or_else(|| {
        std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1)
    });
    if workers == 0 {
        eprintln!("error: --workers must be at least 1");
        return ExitCode::from(1);
    }
    let out = args.out.clone().unwrap_or_else(|| PathBuf::from("out"));
    match runner::run_batch(&list, workers, &out) {
        Ok(report) => {
            let n = report.rows.len();
            let bad = report.failures.len();
            eprintln!("{} runs, {} failed; summary in {}", n, bad, out.join("summary.csv").display());
            for e in &report.failures {
                eprintln!("error: {e}");
            }
            match report.failures.first() {
                None => ExitCode::SUCCESS,
                Some(e) => ExitCode::from(exit_code(e)),
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
