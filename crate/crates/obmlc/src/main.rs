fn main() {
    std::process::exit(obmlc::cli::main_with_exit_code());
}
