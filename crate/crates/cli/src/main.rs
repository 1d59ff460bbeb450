fn main() {
    std::process::exit(lpfourier::cli::run(std::env::args_os()));
}
