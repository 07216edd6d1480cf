fn main() {
    std::process::exit(hole_anneal::cli::run(std::env::args_os()));
}
