use clap::Parser;

fn main() {
    let cli = hyperpack::cli::Cli::parse();
    std::process::exit(hyperpack::cli::run(cli));
}
