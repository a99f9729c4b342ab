fn main() {
    std::process::exit(unicrit::cli::run(std::env::args_os()));
}
