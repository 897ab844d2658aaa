use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use morita::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli);
    let mut out = std::io::stdout().lock();
    if outcome.code == morita::cli::EXIT_CONFIG || outcome.code == morita::cli::EXIT_BOUND {
        let _ = out.flush();
        eprint!("{}", outcome.output);
    } else {
        let _ = out.write_all(outcome.output.as_bytes());
    }
    ExitCode::from(outcome.code as u8)
}
