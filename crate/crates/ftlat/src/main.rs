use std::process::ExitCode;

use clap::Parser;
use ftlat::cli::{run, Cli};

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("ftlat: {e}");
            ExitCode::from(2)
        }
    }
}
