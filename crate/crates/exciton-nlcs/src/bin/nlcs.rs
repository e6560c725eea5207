use clap::Parser;
use exciton_nlcs::cli::{run, Cli};

fn main() {
    std::process::exit(run(Cli::parse()));
}
