//! Binary entry point. Exit codes: 0 success, 1 data or processing
//! error, 2 usage error.

use clap::Parser;
use terraprop_cli::{cli::Cli, commands};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        // clap exits 2 on usage errors, 0 for --help/--version.
        Err(err) => err.exit(),
    };
    if let Err(err) = commands::run(cli) {
        eprintln!("error: {err:#}");
        std::process::exit(1);
    }
}
