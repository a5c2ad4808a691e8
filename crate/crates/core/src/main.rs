fn main() {
    std::process::exit(wreathcount::cli::run());
}
