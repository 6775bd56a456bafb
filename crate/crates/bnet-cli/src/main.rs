use clap::Parser;

fn main() {
    let cli = bnet_cli::app::Cli::parse();
    std::process::exit(bnet_cli::app::run(cli));
}
