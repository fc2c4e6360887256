fn main() {
    std::process::exit(dcft_cli::run(std::env::args_os()));
}
