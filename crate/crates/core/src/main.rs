use std::process::ExitCode;

use clap::Parser;
use isoproxim::cli::{execute, format_output, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(record) => {
            print!("{}", format_output(&record, cli.format));
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
