fn main() {
    std::process::exit(ringlab_cli::run(std::env::args_os()));
}
