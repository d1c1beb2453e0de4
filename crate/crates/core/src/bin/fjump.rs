use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use fjump::cli::{execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = execute(&cli.command);
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(outcome.code.clamp(0, 255) as u8)
}
