fn main() {
    std::process::exit(weakmodel::cli::run(std::env::args_os()));
}
