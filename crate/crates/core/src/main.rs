fn main() {
    std::process::exit(degen::cli::run(std::env::args_os()));
}
