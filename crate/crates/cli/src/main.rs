fn main() {
    std::process::exit(occupation_cli::run(std::env::args_os()));
}
