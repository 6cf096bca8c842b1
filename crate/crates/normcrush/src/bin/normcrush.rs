fn main() {
    std::process::exit(normcrush::cli::main());
}
