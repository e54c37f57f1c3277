fn main() {
    std::process::exit(blockdeg::cli::main_with_args(std::env::args_os()));
}
