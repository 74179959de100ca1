fn main() {
    std::process::exit(objcomb::cli::main_with_args(std::env::args_os()));
}
