use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use mertens::cli::{error_json, run, Cli};
use serde_json::json;

/// Exit code for command-line usage errors (unknown subcommand, bad flag).
const USAGE_EXIT: u8 = 2;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.render().to_string();
            println!(
                "{}",
                json!({"error": "usage", "message": msg.trim(), "exit_code": USAGE_EXIT})
            );
            return ExitCode::from(USAGE_EXIT);
        }
    };
    match run(&cli) {
        Ok(summary) => {
            println!("{summary}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            println!("{}", error_json(&e));
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
