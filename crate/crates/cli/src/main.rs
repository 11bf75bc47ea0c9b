fn main() {
    std::process::exit(mvlab_cli::run(std::env::args_os()));
}
