use std::io::Write;

fn main() {
    let out = galmod_core::cli::run_from(std::env::args_os());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    std::io::stdout().flush().ok();
    std::process::exit(out.code);
}
