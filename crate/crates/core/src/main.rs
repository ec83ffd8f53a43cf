fn main() {
    std::process::exit(bindsite::cli::cli_main(std::env::args()));
}
