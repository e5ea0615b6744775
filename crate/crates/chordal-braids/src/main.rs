fn main() {
    std::process::exit(chordal_braids::cli::run(std::env::args().collect()));
}
