fn main() {
    std::process::exit(qcong::harness::cli_main(std::env::args_os()));
}
