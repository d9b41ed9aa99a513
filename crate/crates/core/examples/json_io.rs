//! Complexes, functions and weighted triangulations round-trip through JSON.

use mcnaughton::hats::WeightedTriangulation;
use mcnaughton::mvterm::parse_term;
use mcnaughton::pwl::{compile, PwlFunction};

fn main() {
    let f = compile(&parse_term("x1 . ~x2", 2).unwrap(), 2).unwrap();
    let text = serde_json::to_string_pretty(&f.to_json()).unwrap();
    println!("{}", text);
    let back = PwlFunction::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
    assert_eq!(back, f);

    let w = WeightedTriangulation::unit(f.carrier().clone());
    let text = serde_json::to_string(&w.to_json()).unwrap();
    let back = WeightedTriangulation::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
    assert_eq!(back.weights(), w.weights());
    println!("weighted triangulation with {} vertices round-trips", back.vertices().len());
}
