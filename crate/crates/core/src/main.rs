use clap::Parser;
use octaplex::cli::{run, Cli};

fn main() {
    std::process::exit(run(Cli::parse()));
}
