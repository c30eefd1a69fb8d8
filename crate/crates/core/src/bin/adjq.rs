fn main() {
    std::process::exit(adjq_core::cli_io::main_with_args(std::env::args_os()));
}
