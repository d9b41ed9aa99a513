//! Parse MV-terms and evaluate them at rational points.
//!
//! ```bash
//! cargo run --example evaluate -- "x1 -> (x2 . x2)" 1/3 3/4
//! ```

use mcnaughton::geometry::RationalPoint;
use mcnaughton::mvterm::{eval_term, parse_term, print_term};
use mcnaughton::rational::{format_q, parse_q};

fn main() {
    let mut args = std::env::args().skip(1);
    let text = args.next().unwrap_or_else(|| "x1 -> (x2 . x2)".into());
    let mut coords: Vec<_> = args.map(|a| parse_q(&a).expect("rational coordinate")).collect();
    let t = parse_term(&text, usize::MAX).unwrap_or_else(|e| panic!("{}", e));
    if coords.is_empty() {
        coords = (1..=t.max_var()).map(|i| parse_q(&format!("{}/{}", i, t.max_var() + 2)).unwrap()).collect();
    }
    let x = RationalPoint::new(coords).expect("point of the unit cube");
    println!("term      {}", print_term(&t));
    println!("desugared {}", print_term(&t.desugar()));
    println!("value at {} = {}", x, format_q(&eval_term(&t, &x).unwrap()));
}
