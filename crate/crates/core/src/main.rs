fn main() {
    std::process::exit(quasibound::cli::main_with_args(std::env::args_os()));
}
