fn main() {
    std::process::exit(hypersym::cli::main());
}
