fn main() {
    std::process::exit(localprop::cli::main());
}
