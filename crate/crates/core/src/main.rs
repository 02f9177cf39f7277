use std::process::exit;

fn main() {
    exit(tmsat::cli::run(std::env::args_os()));
}
