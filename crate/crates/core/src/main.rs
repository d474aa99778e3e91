use clap::Parser;

fn main() {
    std::process::exit(disk_interp::cli::run(disk_interp::cli::Cli::parse()));
}
