fn main() {
    std::process::exit(toritrans::cli::run(std::env::args_os()));
}
