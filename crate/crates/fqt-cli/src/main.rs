fn main() {
    std::process::exit(fqt_cli::run());
}
