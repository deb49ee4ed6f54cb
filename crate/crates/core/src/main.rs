fn main() {
    std::process::exit(flagalg::cli::run(std::env::args_os()));
}
