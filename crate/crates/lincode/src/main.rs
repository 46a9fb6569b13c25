fn main() {
    std::process::exit(lincode::cli::run());
}
