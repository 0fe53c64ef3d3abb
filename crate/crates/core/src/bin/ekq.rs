fn main() {
    std::process::exit(ekq::cli::run(std::env::args_os()));
}
