//! Is the generated subalgebra the whole free algebra?

use mcnaughton::cancel::CancelToken;
use mcnaughton::decide::{check_equals_free, check_iso_to_free, check_separation};
use mcnaughton::mvterm::parse_term;

fn main() {
    let token = CancelToken::with_timeout(std::time::Duration::from_secs(30));
    for (n, gens) in [
        (1, vec!["x1 . x1", "~(x1+x1)"]),
        (1, vec!["~x1"]),
        (2, vec!["x1", "x2", "x1 . x2"]),
        (2, vec!["x1 . x1", "~(x1+x1)", "x2"]),
    ] {
        let ts: Vec<_> = gens.iter().map(|g| parse_term(g, n).unwrap()).collect();
        println!("{:?}: equals free {}", gens, check_equals_free(&ts, n, &token).unwrap());
        if !check_separation(&ts, n).unwrap().verdict {
            continue;
        }
        let iso = check_iso_to_free(&ts, n, &token).unwrap();
        if let Some(w) = iso.bad_vertex {
            println!("  vertex {} maps to {} of smaller denominator", w.vertex, w.image);
        }
        if let Some(t) = iso.bad_simplex {
            println!("  image simplex {} is not regular", t);
        }
    }
}
