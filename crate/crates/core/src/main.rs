fn main() {
    std::process::exit(moebius_ortho::cli::run(std::env::args_os()));
}
