use clap::Parser;

fn main() {
    let cli = toricsing::cli::Cli::parse();
    std::process::exit(toricsing::cli::run(cli));
}
