fn main() {
    std::process::exit(crossfam::cli::main());
}
