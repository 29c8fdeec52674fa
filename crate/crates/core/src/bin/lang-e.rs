fn main() {
    std::process::exit(lang_e::bench::cli::main());
}
