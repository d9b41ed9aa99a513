//! Recover a term from a McNaughton function, and build hat terms along a
//! history of blow-ups.

use mcnaughton::geometry::RationalPoint;
use mcnaughton::mvterm::{parse_term, print_term};
use mcnaughton::pwl::{compile, pwl_equal};
use mcnaughton::rational::qr;
use mcnaughton::synth::{hat_terms, synthesize_term, ProvenancedComplex};

fn main() {
    let t = parse_term("(x1 + x1) . ~(x1 . x1 . x1)", 1).unwrap();
    let f = compile(&t, 1).unwrap();
    let s = synthesize_term(&f).unwrap();
    println!("{}\n  -> {}", print_term(&t), print_term(&s));
    println!("same function: {}", pwl_equal(&compile(&s, 1).unwrap(), &f).unwrap());

    let mut p = ProvenancedComplex::new(1);
    for (a, b) in [(1, 2), (1, 3), (2, 3)] {
        p.blow_up(RationalPoint::new(vec![qr(a, b)]).unwrap()).unwrap();
    }
    for (v, h) in p.complex().vertices().iter().zip(hat_terms(&p).unwrap()) {
        println!("  hat at {}: {}", v, print_term(&h));
    }
}
