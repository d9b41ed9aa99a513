fn main() {
    let out = mcnaughton::cli::run_from(std::env::args_os());
    if out.code == mcnaughton::cli::EXIT_INPUT && !out.report.starts_with('{') {
        eprint!("{}", out.report);
    } else {
        print!("{}", out.report);
    }
    std::process::exit(out.code);
}
