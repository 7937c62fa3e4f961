fn main() {
    std::process::exit(nematic::cli::main_with_args(std::env::args_os()));
}
