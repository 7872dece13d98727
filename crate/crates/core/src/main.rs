use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use cyclekit::cli::{exit_code, run, Cli, EXIT_VERIFICATION_FAILED};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(report.output.as_bytes());
            if report.failed {
                ExitCode::from(EXIT_VERIFICATION_FAILED)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(exit_code(&e))
        }
    }
}
