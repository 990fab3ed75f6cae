use std::io;

fn main() {
    let code = boson_bounds::cli::run(std::env::args_os(), &mut io::stdout(), &mut io::stderr());
    std::process::exit(code);
}
