fn main() {
    std::process::exit(tilecon::cli::run(std::env::args()));
}
