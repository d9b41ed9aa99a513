//! Proptest strategies shared by the unit tests.

use proptest::prelude::*;

use crate::geometry::RationalPoint;
use crate::mvterm::{BinOp, Term};
use crate::rational::qr;

pub fn term_strategy(n: usize, depth: u32) -> BoxedStrategy<Term> {
    let leaf = prop_oneof![
        1 => Just(Term::zero()),
        1 => Just(Term::one()),
        6 => (1..=n).prop_map(Term::var),
    ];
    leaf.prop_recursive(depth, 48, 2, |inner| {
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

pub fn point_strategy(n: usize) -> BoxedStrategy<RationalPoint> {
    proptest::collection::vec((0i64..=24, 1i64..=24), n)
        .prop_map(|v| RationalPoint::new(v.into_iter().map(|(a, b)| qr(a.min(b), b)).collect()).unwrap())
        .boxed()
}
