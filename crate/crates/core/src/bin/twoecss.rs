fn main() {
    std::process::exit(twoecss::cli::main_with(std::env::args_os()));
}
