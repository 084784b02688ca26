fn main() {
    std::process::exit(pants_cli::commands::main_exit());
}
