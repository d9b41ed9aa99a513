#![allow(dead_code)]

use mcnaughton::geometry::{triangulate_cells, Complex, RationalPoint};
use mcnaughton::mvterm::{BinOp, Term};
use mcnaughton::rational::qr;
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::TestRunner;

/// Deterministic stream of samples from a strategy.
pub struct Sampler {
    runner: TestRunner,
}

impl Sampler {
    pub fn new() -> Self {
        Sampler {
            runner: TestRunner::deterministic(),
        }
    }

    pub fn draw<S: Strategy>(&mut self, s: &S) -> S::Value {
        s.new_tree(&mut self.runner).expect("strategy never rejects").current()
    }
}

pub fn term(n: usize, depth: u32) -> BoxedStrategy<Term> {
    let leaf = prop_oneof![
        1 => Just(Term::zero()),
        1 => Just(Term::one()),
        6 => (1..=n).prop_map(Term::var),
    ];
    leaf.prop_recursive(depth, 64, 2, |inner| {
        let op = prop_oneof![
            Just(BinOp::OPlus),
            Just(BinOp::OTimes),
            Just(BinOp::Meet),
            Just(BinOp::Join),
            Just(BinOp::TruncSub),
            Just(BinOp::Implies),
        ];
        prop_oneof![
            1 => inner.clone().prop_map(Term::neg),
            3 => (op, inner.clone(), inner).prop_map(|(o, a, b)| Term::bin(o, a, b)),
        ]
    })
    .boxed()
}

pub fn point(n: usize, max_den: i64) -> BoxedStrategy<RationalPoint> {
    proptest::collection::vec((1..=max_den).prop_flat_map(|d| (0..=d, Just(d))), n)
        .prop_map(|v| RationalPoint::new(v.into_iter().map(|(a, d)| qr(a, d)).collect()).unwrap())
        .boxed()
}

/// Pulling triangulation of the hull of up to `n + 4` random points with
/// denominators at most `max_den`; every vertex is one of the points.
pub fn complex(n: usize, max_den: i64) -> BoxedStrategy<Complex> {
    proptest::collection::vec(point(n, max_den), n + 1..=n + 4)
        .prop_map(move |pts| triangulate_cells(n, &[pts]).unwrap())
        .boxed()
}
