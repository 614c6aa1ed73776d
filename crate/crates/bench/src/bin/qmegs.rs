fn main() {
    std::process::exit(qmegs_bench::cli::cli_main(std::env::args_os()));
}
