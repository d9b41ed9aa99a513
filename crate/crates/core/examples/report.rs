//! Drive the command-line front end in-process and read its JSON report.

use mcnaughton::cli::run_from;

fn main() {
    let out = run_from(["mcnaughton", "iso-free", "-n", "1", "x1 . x1", "~(x1+x1)"]);
    println!("exit {}", out.code);
    println!("{}", out.report);
}
