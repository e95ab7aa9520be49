use std::process::ExitCode;

use clap::Parser;
use coha_cli::{run, Cli, CliError, Context};

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let result = Context::from_cli(&cli).and_then(|ctx| run(&ctx, &cli.command));
    match result {
        Ok(report) => {
            print!("{}", if cli.machine { report.machine() } else { report.text() });
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(CliError::exit_code(&e) as u8)
        }
    }
}
