fn main() {
    std::process::exit(cavity2sat::cli::dispatch(std::env::args_os()));
}
