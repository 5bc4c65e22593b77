fn main() {
    std::process::exit(lambdagw::cli::run(std::env::args_os()));
}
