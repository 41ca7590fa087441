fn main() {
    std::process::exit(graphdsp::cli::run(std::env::args_os()));
}
