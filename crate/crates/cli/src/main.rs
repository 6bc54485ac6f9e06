use std::process::ExitCode;

use clap::Parser;
use foliation_cli::{run_cli, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run_cli(&cli, std::env::vars()) {
        Ok(outcome) => {
            for line in &outcome.output.summary {
                println!("{line}");
            }
            println!("report: {}", cli.out.join("report.json").display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
