fn main() {
    std::process::exit(orbitale::cli::run(std::env::args_os()));
}
