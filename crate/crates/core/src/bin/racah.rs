fn main() {
    std::process::exit(racah_core::cli::main_with_args(std::env::args_os()));
}
