use clap::Parser;

fn main() {
    let cli = hybridwc_cli::Cli::parse();
    std::process::exit(hybridwc_cli::run(&cli));
}
