fn main() {
    std::process::exit(gammatrace::cli::run(std::env::args_os()));
}
