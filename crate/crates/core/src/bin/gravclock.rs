fn main() {
    std::process::exit(gravclock::cli::run_cli(std::env::args_os()));
}
