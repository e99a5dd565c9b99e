fn main() {
    std::process::exit(hardsoft::cli::run(std::env::args_os()));
}
