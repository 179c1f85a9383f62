mod args;
mod commands;
mod output;

use std::path::Path;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::CliError;

fn run(cli: &Cli) -> Result<(), CliError> {
    let (artifacts, out) = match &cli.command {
        Command::Surfaces(a) => (commands::surfaces(a)?, None),
        Command::Dem(a) => (commands::dem(a)?, Some(&a.output.out)),
        Command::Imaging(a) => (commands::imaging(a)?, Some(&a.output.out)),
        Command::BoundD(a) => (commands::bound_d(a)?, None),
        Command::CurveBounds(a) => (commands::curve_bounds_cmd(a)?, None),
        Command::Region(a) => (commands::region(a)?, Some(&a.output.out)),
        Command::Approx(a) => (commands::approx(a)?, Some(&a.output.out)),
        Command::Compare(a) => (commands::compare_cmd(a)?, Some(&a.output.out)),
    };
    let dir = out.map(|p| p.as_path()).unwrap_or(Path::new("."));
    let written = artifacts
        .commit(dir)
        .map_err(|e| CliError::Config(format!("cannot write outputs to {}: {e}", dir.display())))?;
    print!("{}", artifacts.stdout);
    for path in written {
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("epsortho: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
