fn main() {
    std::process::exit(feelab_cli::run(std::env::args_os()));
}
