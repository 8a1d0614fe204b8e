fn main() {
    std::process::exit(hopfspecies::cli::main_with(std::env::args_os()));
}
