fn main() {
    std::process::exit(quditbloch_cli::cli_main(std::env::args_os()));
}
