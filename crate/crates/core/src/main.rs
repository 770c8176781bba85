fn main() {
    let code = gabor_theta::cli::run(std::env::args_os());
    std::process::exit(code);
}
