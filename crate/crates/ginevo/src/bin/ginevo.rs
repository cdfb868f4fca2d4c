fn main() {
    std::process::exit(ginevo::cli::run(std::env::args_os()));
}
