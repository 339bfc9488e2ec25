fn main() {
    std::process::exit(bergman_cli::run());
}
