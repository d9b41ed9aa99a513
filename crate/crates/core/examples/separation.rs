//! Do the generators separate the points of the cube?

use mcnaughton::decide::check_separation;
use mcnaughton::mvterm::parse_term;

fn main() {
    for (n, gens) in [
        (1, vec!["x1 . x1", "~(x1+x1)"]),
        (1, vec!["x1+x1"]),
        (2, vec!["x1 /\\ x2", "x1 \\/ x2"]),
        (2, vec!["x1 + x2", "x1 . ~x2"]),
    ] {
        let ts: Vec<_> = gens.iter().map(|g| parse_term(g, n).unwrap()).collect();
        let r = check_separation(&ts, n).unwrap();
        print!("{:?}: separating {}", gens, r.verdict);
        if let Some(w) = r.witness {
            print!(", {} and {} collide ({:?}), replays: {}", w.x, w.y, w.kind, w.replay(&ts));
        }
        println!();
    }
}
