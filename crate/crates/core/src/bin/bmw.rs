fn main() {
    std::process::exit(bmw_core::cli::main_with_args(std::env::args_os()));
}
