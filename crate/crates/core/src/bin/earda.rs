fn main() {
    env_logger::init();
    std::process::exit(earda::cli::run(std::env::args_os()));
}
