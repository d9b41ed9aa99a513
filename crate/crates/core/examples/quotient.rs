//! Present a subalgebra as a quotient of a free algebra, and decide whether
//! a quotient embeds back into one.

use mcnaughton::cancel::CancelToken;
use mcnaughton::decide::{generators_to_quotient, quotient_embeddable};
use mcnaughton::mvterm::{parse_term, print_term};

fn main() {
    let token = CancelToken::new();
    let ts = vec![parse_term("x1 . x1", 1).unwrap(), parse_term("~(x1+x1)", 1).unwrap()];
    let q = generators_to_quotient(&ts, 1, &token).unwrap();
    println!("sigma in {} variables: {}", q.k, print_term(&q.sigma));
    println!("range: {}", q.range.maximal().iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", "));

    for sigma in ["0", "x1 /\\ ~x1", "(x1 . x1) + ~(x1+x1)"] {
        let r = quotient_embeddable(&parse_term(sigma, 1).unwrap(), 1, &token).unwrap();
        match r.failed {
            None => println!("{}: embeds", sigma),
            Some(c) => println!("{}: fails condition ({})", sigma, c.label()),
        }
    }
}
