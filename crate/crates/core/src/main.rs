fn main() {
    std::process::exit(biregular::cli::run(std::env::args_os()));
}
