use num_bigint::BigInt;
use proptest::prelude::*;

use super::*;
use crate::geometry::support_equal;
use crate::hats::{hats_of, multipliers, WeightedTriangulation};
use crate::mvterm::{parse_term, print_term};
use crate::pwl::{compile, LinearForm, PwlFunction};
use crate::rational::{q, qr};
use crate::synth::synthesize_term;
use crate::testgen::term_strategy;

fn terms(texts: &[&str], n: usize) -> Vec<Term> {
    texts.iter().map(|t| parse_term(t, n).unwrap()).collect()
}

fn pt(c: &[Q]) -> RationalPoint {
    RationalPoint::new(c.to_vec()).unwrap()
}

fn half_pair() -> Vec<Term> {
    terms(&["x1 . x1", "~(x1+x1)"], 1)
}

fn go() -> CancelToken {
    CancelToken::new()
}

fn intervals(bs: &[Q]) -> Complex {
    Complex::new(
        1,
        bs.windows(2)
            .map(|w| Simplex::new(vec![pt(&[w[0].clone()]), pt(&[w[1].clone()])]).unwrap())
            .collect(),
    )
    .unwrap()
}

fn hat_terms(w: &WeightedTriangulation) -> Vec<Term> {
    hats_of(w).hats.iter().map(|h| synthesize_term(h).unwrap()).collect()
}

fn thirds() -> WeightedTriangulation {
    let weights = [1, 3, 3, 1].iter().map(|&x| BigInt::from(x)).collect();
    WeightedTriangulation::new(intervals(&[q(0), qr(1, 3), qr(2, 3), q(1)]), weights).unwrap()
}

#[test]
fn separation_examples() {
    assert!(check_separation(&terms(&["x1", "x2"], 2), 2).unwrap().verdict);
    let r = check_separation(&terms(&["x1+x1"], 1), 1).unwrap();
    assert!(!r.verdict && !r.projective);
    let w = r.witness.unwrap();
    assert_eq!((w.x.clone(), w.y.clone()), (pt(&[qr(1, 2)]), pt(&[q(1)])));
    assert_eq!(w.kind, CollisionKind::Vertices);
    assert!(w.replay(&terms(&["x1+x1"], 1)));
    let r = check_separation(&half_pair(), 1).unwrap();
    assert!(r.verdict && r.projective && r.witness.is_none());
    assert_eq!(r.image.maximal().len(), 2);
    assert_eq!(check_separation(&[], 1).unwrap_err(), DecideError::NoGenerators);
}

#[test]
fn collapse_and_overlap_witnesses() {
    // x1 alone ignores x2
    let ts = terms(&["x1"], 2);
    let w = check_separation(&ts, 2).unwrap().witness.unwrap();
    assert!(w.replay(&ts));
    // distinct vertex images, but two image segments overlap
    let ts = terms(&["x1 /\\ ~x1", "x1 . x1 . x1"], 1);
    let r = check_separation(&ts, 1).unwrap();
    assert!(!r.verdict);
    assert!(r.witness.unwrap().replay(&ts));
    // folded square: 2D images overlapping without shared vertices
    let ts = terms(&["(x1+x1) . ~(x1 . x1)", "x2"], 2);
    let w = check_separation(&ts, 2).unwrap().witness.unwrap();
    assert!(w.replay(&ts));
}

#[test]
fn iso_examples() {
    assert!(check_iso_to_free(&terms(&["x1"], 1), 1, &go()).unwrap().verdict);
    let ts = half_pair();
    let r = check_iso_to_free(&ts, 1, &go()).unwrap();
    assert!(!r.verdict && r.bad_simplex.is_none());
    let w = r.bad_vertex.unwrap();
    assert_eq!(w.vertex, pt(&[qr(1, 2)]));
    assert_eq!(w.image, pt(&[q(0), q(0)]));
    assert!(w.replay(&ts));
    assert!(check_iso_to_free(&terms(&["~x1", "x1"], 1), 1, &go()).unwrap().verdict);
    assert!(matches!(
        check_iso_to_free(&terms(&["x1+x1"], 1), 1, &go()),
        Err(DecideError::Precondition(_))
    ));
}

#[test]
fn free_and_equal_examples() {
    assert!(check_free_and_separating(&terms(&["x1", "x2"], 2), 2, &go()).unwrap());
    assert!(!check_free_and_separating(&terms(&["x1+x1"], 1), 1, &go()).unwrap());
    assert!(!check_free_and_separating(&half_pair(), 1, &go()).unwrap());
    assert!(check_equals_free(&terms(&["~x1"], 1), 1, &go()).unwrap());
    assert!(!check_equals_free(&half_pair(), 1, &go()).unwrap());
    assert!(check_equals_free(&terms(&["x1", "x1+x1"], 1), 1, &go()).unwrap());
}

#[test]
fn basis_of_half_pair() {
    let b = basis_from_generators(&half_pair(), 1, &go()).unwrap();
    assert_eq!(b.weighted.vertices(), &[pt(&[q(0)]), pt(&[qr(1, 2)]), pt(&[q(1)])]);
    assert_eq!(b.weighted.weights(), &[BigInt::from(1), BigInt::from(2), BigInt::from(1)]);
    assert_eq!(multipliers(&b.weighted).unwrap(), vec![BigInt::from(1); 3]);
    let form = |a, c| LinearForm::new(vec![q(a)], q(c));
    assert_eq!(b.hats.hats[0].pieces(), &[form(-2, 1), form(0, 0)]);
    assert_eq!(b.hats.hats[1].pieces(), &[form(2, 0), form(-2, 2)]);
    assert_eq!(b.hats.hats[2].pieces(), &[form(0, 0), form(2, -1)]);
    assert!(subalgebras_equal(&half_pair(), &b.terms, 1, &go()).unwrap().verdict);
}

#[test]
fn basis_of_coordinate() {
    let b = basis_from_generators(&terms(&["x1"], 1), 1, &go()).unwrap();
    assert_eq!(b.weighted.complex(), &intervals(&[q(0), q(1)]));
    assert_eq!(b.weighted.weights(), &[BigInt::from(1), BigInt::from(1)]);
    assert_eq!(print_term(&b.terms[1]), "x1");
    assert_eq!(print_term(&b.terms[0]), "~x1");
}

#[test]
fn basis_of_weighted_hats_keeps_weights() {
    let b = basis_from_generators(&hat_terms(&thirds()), 1, &go()).unwrap();
    assert!(b.weighted.weights().iter().any(|a| *a != BigInt::from(1)));
    // the linearizer gets regularized at 1/2, which keeps weight 1
    assert_eq!(b.weighted.weights(), &[1, 3, 1, 3, 1].map(BigInt::from));
    assert!(crate::hats::is_basic(&b.weighted));
    assert!(matches!(
        basis_from_generators(&terms(&["x1+x1"], 1), 1, &go()),
        Err(DecideError::Precondition(_))
    ));
}

#[test]
fn equality_examples() {
    assert!(subalgebras_equal(&terms(&["x1"], 1), &terms(&["~x1"], 1), 1, &go()).unwrap().verdict);
    let r = subalgebras_equal(&half_pair(), &terms(&["x1"], 1), 1, &go()).unwrap();
    assert!(!r.verdict);
    let w = r.witness.unwrap();
    assert_eq!((w.side, w.generator), (0, 0));
    assert_eq!(w.vertex, pt(&[qr(1, 2)]));
    assert_eq!((w.value.clone(), w.quantum.clone()), (qr(1, 2), q(1)));
    assert!(w.replay(&half_pair(), &terms(&["x1"], 1)));
    let swapped = terms(&["~(x1+x1)", "x1 . x1"], 1);
    assert!(subalgebras_equal(&half_pair(), &swapped, 1, &go()).unwrap().verdict);
    // the converse direction reports side 1
    let r = subalgebras_equal(&terms(&["x1"], 1), &half_pair(), 1, &go()).unwrap();
    assert_eq!(r.witness.as_ref().unwrap().side, 1);
    assert!(r.witness.unwrap().replay(&terms(&["x1"], 1), &half_pair()));
    assert!(matches!(
        subalgebras_equal(&terms(&["x1+x1"], 1), &terms(&["x1"], 1), 1, &go()),
        Err(DecideError::Precondition(_))
    ));
}

#[test]
fn hats_of_weighted_triangulations() {
    // all weights 1 on a regular complex: the free algebra
    let w = WeightedTriangulation::unit(intervals(&[q(0), qr(1, 2), q(1)]));
    assert!(check_equals_free(&hat_terms(&w), 1, &go()).unwrap());
    let ts = hat_terms(&thirds());
    assert!(check_separation(&ts, 1).unwrap().verdict);
    assert!(!check_equals_free(&ts, 1, &go()).unwrap());
}

#[test]
fn quotient_examples() {
    let r = generators_to_quotient(&terms(&["x1"], 1), 1, &go()).unwrap();
    assert_eq!((print_term(&r.sigma), r.k), ("0".to_string(), 1));
    let r = generators_to_quotient(&terms(&["x1+x1"], 1), 1, &go()).unwrap();
    assert_eq!(print_term(&r.sigma), "0");
    let r = generators_to_quotient(&half_pair(), 1, &go()).unwrap();
    assert_eq!(r.k, 2);
    let z = crate::pwl::zeroset(&compile(&r.sigma, 2).unwrap());
    let l = Complex::new(
        2,
        vec![
            Simplex::new(vec![pt(&[q(0), q(1)]), pt(&[q(0), q(0)])]).unwrap(),
            Simplex::new(vec![pt(&[q(0), q(0)]), pt(&[q(1), q(0)])]).unwrap(),
        ],
    )
    .unwrap();
    assert!(support_equal(&z, &l));
    assert!(r.triangulation.is_regular());
}

#[test]
fn embed_examples() {
    let r = quotient_embeddable(&parse_term("0", 1).unwrap(), 1, &go()).unwrap();
    assert!(r.verdict && r.failed.is_none());
    let r = quotient_embeddable(&parse_term("x1 /\\ ~x1", 1).unwrap(), 1, &go()).unwrap();
    assert_eq!((r.verdict, r.failed), (false, Some(EmbedCondition::Connected)));
    let r = quotient_embeddable(&parse_term("(x1 . x1) + ~(x1+x1)", 1).unwrap(), 1, &go()).unwrap();
    assert_eq!((r.verdict, r.failed), (false, Some(EmbedCondition::CubeVertex)));
    let r = quotient_embeddable(&parse_term("1", 1).unwrap(), 1, &go()).unwrap();
    assert!(r.trivial && r.failed == Some(EmbedCondition::CubeVertex));
    // {1/2} ∪ ... a segment through a vertex of den 2 only: x2 = 1/2 line
    let r = quotient_embeddable(&parse_term("(x2+x2) . ~(x2 . x2) -> 0", 2).unwrap(), 2, &go()).unwrap();
    assert_eq!(r.failed, Some(EmbedCondition::CubeVertex));
}

#[test]
fn strong_regularity_failure() {
    // y = 0, plus the segment x = 1/2, y <= 1/2 whose vertices both have den 2
    let sigma = parse_term("x2 /\\ (((x1 . x1) \\/ ~(x1+x1)) + (x2 . x2))", 2).unwrap();
    let r = quotient_embeddable(&sigma, 2, &go()).unwrap();
    assert_eq!((r.verdict, r.failed), (false, Some(EmbedCondition::StronglyRegular)));
    assert!(r.zeroset.maximal().iter().any(|s| s.gcd_of_denominators() != BigInt::from(1)));
}

#[test]
fn cancellation_is_reported() {
    let t = CancelToken::new();
    t.cancel();
    assert_eq!(check_iso_to_free(&half_pair(), 1, &t).unwrap_err(), DecideError::Cancelled);
    assert_eq!(generators_to_quotient(&half_pair(), 1, &t).unwrap_err(), DecideError::Cancelled);
}

#[test]
fn pwl_constant_hat_sanity() {
    let c = intervals(&[q(0), q(1)]);
    let one = PwlFunction::constant(c, q(1));
    assert_eq!(print_term(&synthesize_term(&one).unwrap()), "1");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn free_checks_agree(
        (n, ts) in (1usize..=2).prop_flat_map(|n| (Just(n), proptest::collection::vec(term_strategy(n, 4), 1..=3)))
    ) {
        let s = check_separation(&ts, n).unwrap();
        let iso = if s.verdict {
            let r = check_iso_to_free(&ts, n, &go()).unwrap();
            prop_assert_eq!(r.verdict, r.bad_simplex.is_none() && r.bad_vertex.is_none());
            prop_assert!(r.bad_simplex.is_none() || r.bad_vertex.is_none());
            if let Some(w) = &r.bad_vertex {
                prop_assert!(w.replay(&ts));
            }
            if let Some(t) = &r.bad_simplex {
                prop_assert!(!t.is_regular());
            }
            r.verdict
        } else {
            false
        };
        let eq = check_equals_free(&ts, n, &go()).unwrap();
        prop_assert_eq!(eq, s.verdict && iso);
        prop_assert_eq!(eq, check_free_and_separating(&ts, n, &go()).unwrap());
        if let Some(w) = &s.witness {
            prop_assert!(w.replay(&ts));
        }
    }

    #[test]
    fn separating_n_tuples_generate_everything(
        (n, ts) in (1usize..=2).prop_flat_map(|n| (Just(n), proptest::collection::vec(term_strategy(n, 4), n)))
    ) {
        if check_separation(&ts, n).unwrap().verdict {
            prop_assert!(check_equals_free(&ts, n, &go()).unwrap());
        }
    }
}
