fn main() {
    std::process::exit(sl21osc::cli::main_with_args(std::env::args_os()));
}
