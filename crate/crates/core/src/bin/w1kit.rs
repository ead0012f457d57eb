fn main() {
    std::process::exit(w1kit::cli::run(std::env::args()));
}
