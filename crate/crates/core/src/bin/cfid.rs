fn main() {
    let code = complementary_fidelity::cli::run(std::env::args_os());
    std::process::exit(code);
}
