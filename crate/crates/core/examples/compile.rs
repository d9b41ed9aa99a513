//! Compile a term to its McNaughton function: a triangulation of the cube
//! with one integer linear piece per simplex.

use mcnaughton::mvterm::parse_term;
use mcnaughton::pwl::compile;

fn main() {
    let text = std::env::args().nth(1).unwrap_or_else(|| "(x1 + x2) . ~(x1 /\\ x2)".into());
    let t = parse_term(&text, usize::MAX).unwrap();
    let n = t.max_var().max(1);
    let f = compile(&t, n).unwrap();
    println!("{} simplexes, integral: {}", f.carrier().maximal().len(), f.is_integral());
    for (s, piece) in f.carrier().maximal().iter().zip(f.pieces()) {
        println!("  on {}: {}", s, piece);
    }
}
