//! Weighted triangulations, their hats, and the unit partition.

use num_bigint::BigInt;

use mcnaughton::geometry::{Complex, RationalPoint, Simplex};
use mcnaughton::hats::{hats_of, is_basic, multipliers, schauder_hats, verify_unit_partition, WeightedTriangulation};
use mcnaughton::rational::qr;

fn intervals(ends: &[(i64, i64)]) -> Complex {
    let pts: Vec<RationalPoint> = ends.iter().map(|&(a, b)| RationalPoint::new(vec![qr(a, b)]).unwrap()).collect();
    let simplexes = pts.windows(2).map(|w| Simplex::new(w.to_vec()).unwrap()).collect();
    Complex::new(1, simplexes).unwrap()
}

fn main() {
    // thirds are not regular, but weights 1,3,3,1 make the hats integral
    let thirds = intervals(&[(0, 1), (1, 3), (2, 3), (1, 1)]);
    let w = WeightedTriangulation::new(thirds, [1, 3, 3, 1].map(BigInt::from).to_vec()).unwrap();
    println!("basic: {}", is_basic(&w));
    println!("multipliers: {:?}", multipliers(&w).unwrap());
    for (v, h) in w.vertices().iter().zip(&hats_of(&w).hats) {
        let pieces: Vec<String> = h.pieces().iter().map(|p| p.to_string()).collect();
        println!("  hat at {}: {}", v, pieces.join(" | "));
    }
    println!("unit partition: {}", verify_unit_partition(&hats_of(&w)).unwrap());

    let halves = intervals(&[(0, 1), (1, 2), (1, 1)]);
    let s = schauder_hats(&halves).unwrap();
    println!("Schauder hats on halves partition unity: {}", verify_unit_partition(&s).unwrap());
}
