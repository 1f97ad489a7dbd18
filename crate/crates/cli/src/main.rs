fn main() {
    std::process::exit(cisnim_cli::run(std::env::args_os()));
}
