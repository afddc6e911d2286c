fn main() {
    std::process::exit(stochord::cli::run(std::env::args_os()));
}
