fn main() {
    std::process::exit(frobext::cli::main_with_args(std::env::args_os()));
}
