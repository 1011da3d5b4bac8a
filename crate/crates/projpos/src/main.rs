fn main() {
    std::process::exit(projpos::cli::run(std::env::args().skip(1)));
}
