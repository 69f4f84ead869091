fn main() {
    std::process::exit(coincide::cli::dispatch(std::env::args()));
}
