use passreg::cli;

fn main() {
    let cfg = cli::parse_args(std::env::args_os()).unwrap_or_else(|e| e.exit());
    if let Err(e) = cli::configure_threads() {
        eprintln!("error: {e:#}");
        std::process::exit(2);
    }
    std::process::exit(cli::run(&cfg));
}
