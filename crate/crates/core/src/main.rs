fn main() {
    std::process::exit(mbasis::cli::run());
}
