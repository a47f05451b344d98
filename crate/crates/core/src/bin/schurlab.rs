fn main() {
    std::process::exit(schurlab_core::cli::run());
}
