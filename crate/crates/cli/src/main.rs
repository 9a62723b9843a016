use std::process::ExitCode;

use clap::Parser;
use dvrtop_cli::{emit, execute, Cli};

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors.
    let cli = Cli::parse();
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let outcome = execute(&cli, &argv, None);
    if let Some(msg) = outcome.report["error"]["message"].as_str() {
        eprintln!("dvrtop: {msg}");
    }
    if let Err(e) = emit(&cli, &outcome) {
        eprintln!("dvrtop: cannot write report: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(outcome.code as u8)
}
