fn main() {
    std::process::exit(semiflow_cli::main_entry());
}
