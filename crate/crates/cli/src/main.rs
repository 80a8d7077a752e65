fn main() {
    std::process::exit(nls_cli::run(std::env::args_os()));
}
