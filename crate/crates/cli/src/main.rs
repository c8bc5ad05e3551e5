fn main() {
    std::process::exit(onlinecover_cli::cli_main(std::env::args_os()));
}
