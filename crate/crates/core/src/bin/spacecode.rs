fn main() {
    std::process::exit(spacecode::cli::main_with_args(std::env::args_os()));
}
