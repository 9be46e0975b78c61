fn main() {
    std::process::exit(reesmult::cli::main_entry());
}
