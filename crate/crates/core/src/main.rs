use clap::Parser;

use cubetile::cli::{run, Cli};

fn main() {
    std::process::exit(run(Cli::parse()));
}
