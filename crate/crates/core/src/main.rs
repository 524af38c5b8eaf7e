fn main() {
    std::process::exit(coulomb_mode::cli::main_with(std::env::args_os()));
}
