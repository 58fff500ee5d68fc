use clap::Parser;

fn main() {
    let cli = logmono_cli::Cli::parse();
    std::process::exit(logmono_cli::run(&cli));
}
