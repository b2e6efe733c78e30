fn main() {
    std::process::exit(satalg::cli::run());
}
