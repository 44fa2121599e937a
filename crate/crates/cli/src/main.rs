fn main() {
    std::process::exit(tropmob_cli::run(std::env::args_os()));
}
