fn main() {
    std::process::exit(chm::cli::run());
}
