use std::process::ExitCode;

use clap::Parser;
use soft_bitop::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = run(
        &cli,
        &mut std::io::stdin(),
        &mut std::io::stdout(),
        &mut std::io::stderr(),
    );
    ExitCode::from(code)
}
