fn main() {
    std::process::exit(dpgeom::cli::run_from(std::env::args_os()));
}
