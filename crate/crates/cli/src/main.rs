fn main() {
    std::process::exit(omegalap_cli::run(std::env::args_os()));
}
