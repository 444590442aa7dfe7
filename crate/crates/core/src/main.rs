fn main() {
    std::process::exit(partlab::cli::run(std::env::args_os()));
}
