fn main() {
    std::process::exit(nablafrac::cli::run(std::env::args_os()));
}
