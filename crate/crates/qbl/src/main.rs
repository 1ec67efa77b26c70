use std::process::ExitCode;

use clap::Parser;
use qbl::cli::Cli;
use qbl::commands::EXIT_ERROR;
use qbl::emit::write_output;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome =
        qbl::run(&cli.command).and_then(|o| write_output(&o.text, cli.command.output().out.as_deref()).map(|_| o.exit));
    match outcome {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("qbl {}: {e}", cli.command.name());
            ExitCode::from(EXIT_ERROR as u8)
        }
    }
}
