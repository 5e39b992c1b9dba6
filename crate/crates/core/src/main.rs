use clap::Parser;

use floorcount::cli_io::{run, Cli};

fn main() {
    std::process::exit(run(Cli::parse()));
}
