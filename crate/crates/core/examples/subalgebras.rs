//! Compare the subalgebras generated by two separating lists.

use mcnaughton::cancel::CancelToken;
use mcnaughton::decide::subalgebras_equal;
use mcnaughton::mvterm::parse_term;

fn main() {
    let token = CancelToken::new();
    let parse = |gs: &[&str]| gs.iter().map(|g| parse_term(g, 1).unwrap()).collect::<Vec<_>>();
    for (a, b) in [
        (vec!["x1"], vec!["~x1"]),
        (vec!["x1 . x1", "~(x1+x1)"], vec!["x1"]),
        (vec!["x1 . x1", "~(x1+x1)"], vec!["~(x1+x1)", "x1 . x1"]),
    ] {
        let r = subalgebras_equal(&parse(&a), &parse(&b), 1, &token).unwrap();
        print!("{:?} vs {:?}: {}", a, b, r.verdict);
        if let Some(w) = r.witness {
            print!(" (generator {} takes {} at {}, other side only reaches multiples of {})", w.generator, w.value, w.vertex, w.quantum);
        }
        println!();
    }
}
