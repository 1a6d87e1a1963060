fn main() {
    std::process::exit(twlab::cli::main_with_args(std::env::args_os()));
}
