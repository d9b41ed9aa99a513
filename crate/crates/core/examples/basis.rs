//! Basis of a separating subalgebra: a basic weighted triangulation and
//! one term per hat.

use mcnaughton::cancel::CancelToken;
use mcnaughton::decide::basis_from_generators;
use mcnaughton::hats::multipliers;
use mcnaughton::mvterm::{parse_term, print_term};

fn main() {
    let gens: Vec<String> = std::env::args().skip(1).collect();
    let gens = if gens.is_empty() { vec!["x1 . x1".into(), "~(x1+x1)".into()] } else { gens };
    let ts: Vec<_> = gens.iter().map(|g| parse_term(g, usize::MAX).unwrap()).collect();
    let n = ts.iter().map(|t| t.max_var()).max().unwrap_or(1).max(1);
    let b = basis_from_generators(&ts, n, &CancelToken::new()).unwrap();
    let m = multipliers(&b.weighted).unwrap();
    for (((v, a), m), t) in b.weighted.vertices().iter().zip(b.weighted.weights()).zip(m).zip(&b.terms) {
        println!("{}  weight {}  multiplier {}  {}", v, a, m, print_term(t));
    }
}
