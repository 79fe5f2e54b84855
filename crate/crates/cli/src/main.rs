fn main() {
    std::process::exit(normsum_cli::run(std::env::args_os()));
}
