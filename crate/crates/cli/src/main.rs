fn main() {
    std::process::exit(asai_cli::run(std::env::args_os()));
}
