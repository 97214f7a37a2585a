mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use output::{Failure, Output};

fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var("GENCLUSTER_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| {
            Failure::usage(format!(
                "GENCLUSTER_THREADS must be a positive integer, got `{value}`"
            ))
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Failed(anyhow::anyhow!("cannot configure thread pool: {e}")))
}

fn run(cli: Cli) -> Result<(), Failure> {
    configure_threads()?;
    let out = Output::new(cli.quiet);
    match cli.command {
        Command::Mutate(a) => commands::seed::mutate(&out, a),
        Command::Enumerate(a) => commands::seed::enumerate(&out, a),
        Command::Typec(a) => commands::typec::run(&out, a),
        Command::Sl2(a) => commands::sl2::run(&out, a),
        Command::Sl3(a) => commands::sl3::run(&out, a),
        Command::Verify(a) => commands::verify::run(&out, a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}
