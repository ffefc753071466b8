fn main() {
    std::process::exit(dwsum::cli::run());
}
