fn main() {
    std::process::exit(levelplan::cli::main());
}
