//! Turn a rational triangulation into a regular one by blow-ups.

use mcnaughton::geometry::{desingularize, determinant_profile, Complex};

const INPUT: &str = r#"{"dim": 2, "simplexes": [[["0","0"], ["1","0"], ["1/3","2/3"]], [["1","0"], ["1/3","2/3"], ["1","1"]]]}"#;

fn main() {
    let json = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path).unwrap(),
        None => INPUT.to_string(),
    };
    let c = Complex::from_json_str(&json).unwrap();
    println!("input determinants {:?}, regular: {}", determinant_profile(&c), c.is_regular());
    let d = desingularize(&c);
    for x in &d.centers {
        println!("  blow up at {}", x);
    }
    println!(
        "{} simplexes, {} vertices, regular: {}",
        d.complex.maximal().len(),
        d.complex.vertices().len(),
        d.complex.is_regular()
    );
}
