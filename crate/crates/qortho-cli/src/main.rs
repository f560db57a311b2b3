//! `qortho` executable.

fn main() {
    std::process::exit(qortho_cli::main_with_args(std::env::args_os()));
}
