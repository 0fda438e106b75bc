use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use mosagg_cli::{execute, Cli, EXIT_FAIL, EXIT_OK};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // clap uses 2 for usage errors, which is reserved for missing input
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_FAIL,
            };
            return ExitCode::from(code as u8);
        }
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match execute(cli, &mut lock) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
