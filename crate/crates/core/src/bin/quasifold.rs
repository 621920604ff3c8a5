fn main() {
    std::process::exit(quasifold::cli::main_with(std::env::args_os()));
}
