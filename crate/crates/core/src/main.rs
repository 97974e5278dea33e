use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use parteis::cli::{configure_threads, execute, Cli, Outcome};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| execute(cli.command));
    match result {
        Ok(Outcome::Stdout(text)) => {
            print!("{text}");
            let _ = std::io::stdout().flush();
            ExitCode::SUCCESS
        }
        Ok(Outcome::Written(message)) => {
            eprintln!("{message}");
            ExitCode::SUCCESS
        }
        Ok(Outcome::Failed { stdout, message }) => {
            if let Some(text) = stdout {
                print!("{text}");
            }
            eprintln!("{message}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
