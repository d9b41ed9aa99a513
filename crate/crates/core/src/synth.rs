//! Terms from piecewise-linear functions.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::geometry::{blow_up, standard_cube_triangulation, support_equal, Complex, RationalPoint};
use crate::hats::schauder_hats;
use crate::mvterm::{BinOp, Term};
use crate::pwl::{compile, pwl_equal, LinearForm, PwlFunction};
use crate::rational::Q;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SynthError {
    #[error("piece {0} has non-integer coefficients")]
    NonIntegral(String),
    #[error("value {0} outside [0,1]")]
    OutOfRange(String),
    #[error("function is not defined on the whole cube")]
    NotOnCube,
    #[error("{0} is not a vertex of the complex")]
    NotAVertex(String),
    #[error("blow-up history does not replay: {0}")]
    History(String),
    #[error("synthesized term failed verification")]
    Verification,
}

/// A term whose McNaughton function is `f`.
pub fn synthesize_term(f: &PwlFunction) -> Result<Term, SynthError> {
    let n = f.ambient();
    if !support_equal(f.carrier(), &standard_cube_triangulation(n)) {
        return Err(SynthError::NotOnCube);
    }
    for l in f.pieces() {
        if !l.is_integral() {
            return Err(SynthError::NonIntegral(l.to_string()));
        }
    }
    for (s, l) in f.carrier().maximal().iter().zip(f.pieces()) {
        for v in s.vertices() {
            let y = l.eval(v.coords());
            if y.is_negative() || y > Q::one() {
                return Err(SynthError::OutOfRange(y.to_string()));
            }
        }
    }
    let t = max_min(f);
    if pwl_equal(&compile(&t, n).expect("arity checked"), f) != Ok(true) {
        return Err(SynthError::Verification);
    }
    Ok(t)
}

fn max_min(f: &PwlFunction) -> Term {
    let mut distinct: Vec<&LinearForm> = Vec::new();
    for l in f.pieces() {
        if !distinct.contains(&l) {
            distinct.push(l);
        }
    }
    let mut sets: BTreeSet<Vec<usize>> = BTreeSet::new();
    for (s, lt) in f.carrier().maximal().iter().zip(f.pieces()) {
        let dominating: Vec<usize> = (0..distinct.len())
            .filter(|&j| s.vertices().iter().all(|v| distinct[j].eval(v.coords()) >= lt.eval(v.coords())))
            .collect();
        sets.insert(dominating);
    }
    // a superset's minimum never exceeds its subset's
    let sets: Vec<&Vec<usize>> = sets
        .iter()
        .filter(|a| !sets.iter().any(|b| b != *a && b.len() < a.len() && b.iter().all(|j| a.contains(j))))
        .collect();
    let mut b = Truncation::default();
    let atoms: Vec<Term> = distinct.iter().map(|l| b.term(l)).collect();
    Term::fold(
        BinOp::Join,
        sets.iter().map(|s| Term::fold(BinOp::Meet, s.iter().map(|&j| atoms[j].clone()), Term::one())),
        Term::zero(),
    )
}

/// `min(1, max(0, l))` as a term, for an integer affine form `l`.
pub fn truncated_form(l: &LinearForm) -> Term {
    Truncation::default().term(l)
}

#[derive(Default)]
struct Truncation {
    memo: HashMap<(Vec<BigInt>, BigInt), Term>,
}

impl Truncation {
    fn term(&mut self, l: &LinearForm) -> Term {
        let a: Vec<BigInt> = l.coeffs.iter().map(|c| c.to_integer()).collect();
        self.build(a, l.constant.to_integer())
    }

    fn build(&mut self, a: Vec<BigInt>, b: BigInt) -> Term {
        let key = (a, b);
        if let Some(t) = self.memo.get(&key) {
            return t.clone();
        }
        let (a, b) = &key;
        let hi: BigInt = b + a.iter().filter(|x| x.is_positive()).sum::<BigInt>();
        let lo: BigInt = b + a.iter().filter(|x| x.is_negative()).sum::<BigInt>();
        let nonzero: Vec<usize> = (0..a.len()).filter(|&i| !a[i].is_zero()).collect();
        let t = if hi <= BigInt::zero() {
            Term::zero()
        } else if lo >= BigInt::one() {
            Term::one()
        } else if nonzero.len() == 1 && a[nonzero[0]].is_one() && b.is_zero() {
            Term::var(nonzero[0] + 1)
        } else if nonzero.len() == 1 && a[nonzero[0]] == -BigInt::one() && b.is_one() {
            Term::neg(Term::var(nonzero[0] + 1))
        } else {
            // (l' + y)# = (l'# ⊕ y) ⊙ (l' + 1)#
            let i = nonzero[0];
            let mut rest = a.clone();
            let (y, c) = if a[i].is_positive() {
                rest[i] -= 1;
                (Term::var(i + 1), b.clone())
            } else {
                rest[i] += 1;
                (Term::neg(Term::var(i + 1)), b - 1)
            };
            let low = self.build(rest.clone(), c.clone());
            let high = self.build(rest, c + 1);
            Term::otimes(Term::oplus(low, y), high)
        };
        self.memo.insert(key, t.clone());
        t
    }
}

/// A regular complex obtained from the standard triangulation of the cube
/// by a recorded sequence of blow-ups.
#[derive(Debug, Clone)]
pub struct ProvenancedComplex {
    n: usize,
    history: Vec<RationalPoint>,
    complex: Complex,
}

impl ProvenancedComplex {
    pub fn new(n: usize) -> Self {
        ProvenancedComplex {
            n,
            history: Vec::new(),
            complex: standard_cube_triangulation(n),
        }
    }

    pub fn from_history(n: usize, history: Vec<RationalPoint>) -> Result<Self, SynthError> {
        let mut p = ProvenancedComplex::new(n);
        for c in history {
            p.blow_up(c)?;
        }
        Ok(p)
    }

    pub fn blow_up(&mut self, center: RationalPoint) -> Result<(), SynthError> {
        self.complex = blow_up(&self.complex, &center).map_err(|e| SynthError::History(e.to_string()))?;
        self.history.push(center);
        Ok(())
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn history(&self) -> &[RationalPoint] {
        &self.history
    }

    pub fn arity(&self) -> usize {
        self.n
    }
}

fn cube_hat(v: &RationalPoint) -> Term {
    let mut ones = Vec::new();
    let mut zeros = Vec::new();
    for (i, c) in v.coords().iter().enumerate() {
        if c.is_one() {
            ones.push(Term::var(i + 1));
        } else {
            zeros.push(Term::var(i + 1));
        }
    }
    if ones.is_empty() {
        return Term::neg(Term::fold(BinOp::Join, zeros, Term::zero()));
    }
    let top = Term::fold(BinOp::Meet, ones, Term::one());
    if zeros.is_empty() {
        return top;
    }
    Term::trunc_sub(top, Term::fold(BinOp::Join, zeros, Term::zero()))
}

/// Term for the Schauder hat of `p` at `v`.
pub fn term_for_hat(p: &ProvenancedComplex, v: &RationalPoint) -> Result<Term, SynthError> {
    let vertices = p.complex.vertices();
    let i = vertices
        .binary_search(v)
        .map_err(|_| SynthError::NotAVertex(v.to_string()))?;
    Ok(hat_terms(p)?.swap_remove(i))
}

/// Terms for all Schauder hats of `p`, in vertex order.
pub fn hat_terms(p: &ProvenancedComplex) -> Result<Vec<Term>, SynthError> {
    let vertices = p.complex.vertices();
    if let Some(mut terms) = incremental_hats(p) {
        return Ok(vertices.iter().map(|v| terms.remove(v).unwrap()).collect());
    }
    let hats = schauder_hats(&p.complex).map_err(|_| SynthError::History("complex is not regular".into()))?;
    hats.hats.iter().map(synthesize_term).collect()
}

fn incremental_hats(p: &ProvenancedComplex) -> Option<HashMap<RationalPoint, Term>> {
    let mut complex = standard_cube_triangulation(p.n);
    let mut terms: HashMap<RationalPoint, Term> = complex
        .vertices()
        .into_iter()
        .map(|v| {
            let t = cube_hat(&v);
            (v, t)
        })
        .collect();
    for c in &p.history {
        let idx = complex.locate(c.coords())?;
        let s = &complex.maximal()[idx];
        let face: Vec<RationalPoint> = s.carrier_face(c.coords())?.iter().map(|&i| s.vertices()[i].clone()).collect();
        let sum = face.iter().fold(vec![BigInt::zero(); p.n + 1], |acc, u| {
            acc.iter().zip(u.homogeneous()).map(|(x, y)| x + y).collect()
        });
        if sum != c.homogeneous() {
            return None;
        }
        let tc = Term::fold(BinOp::Meet, face.iter().map(|u| terms[u].clone()), Term::one());
        for u in &face {
            let t = Term::trunc_sub(terms[u].clone(), tc.clone());
            terms.insert(u.clone(), t);
        }
        terms.insert(c.clone(), tc);
        complex = blow_up(&complex, c).ok()?;
        let hats = schauder_hats(&complex).ok()?;
        let vs = complex.vertices();
        for u in face.iter().chain(std::iter::once(c)) {
            let h = &hats.hats[vs.binary_search(u).ok()?];
            if pwl_equal(&compile(&terms[u], p.n).ok()?, h) != Ok(true) {
                return None;
            }
        }
    }
    Some(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mvterm::{eval_term, parse_term, print_term};
    use crate::rational::{q, qr};
    use crate::testgen::term_strategy;
    use proptest::prelude::*;

    fn pt(c: &[Q]) -> RationalPoint {
        RationalPoint::new(c.to_vec()).unwrap()
    }

    fn c(text: &str, n: usize) -> PwlFunction {
        compile(&parse_term(text, n).unwrap(), n).unwrap()
    }

    fn same(t: &Term, text: &str, n: usize) -> bool {
        pwl_equal(&compile(t, n).unwrap(), &c(text, n)) == Ok(true)
    }

    #[test]
    fn synthesize_examples() {
        assert_eq!(print_term(&synthesize_term(&c("0", 1)).unwrap()), "0");
        let t = synthesize_term(&c("x1 . x1", 1)).unwrap();
        assert!(same(&t, "x1 . x1", 1));
        let t = synthesize_term(&c("x1 /\\ ~x1", 1)).unwrap();
        assert!(same(&t, "x1 /\\ ~x1", 1));
        let t = synthesize_term(&c("(x1 + x2) . ~(x1 - x2)", 2)).unwrap();
        assert!(same(&t, "(x1 + x2) . ~(x1 - x2)", 2));
    }

    #[test]
    fn synthesize_rejects_bad_input() {
        let cube = standard_cube_triangulation(1);
        let half = PwlFunction::new(cube.clone(), vec![LinearForm::new(vec![qr(1, 2)], q(0))]).unwrap();
        assert!(matches!(synthesize_term(&half), Err(SynthError::NonIntegral(_))));
        let two = PwlFunction::new(cube, vec![LinearForm::new(vec![q(2)], q(0))]).unwrap();
        assert!(matches!(synthesize_term(&two), Err(SynthError::OutOfRange(_))));
    }

    #[test]
    fn truncated_forms() {
        let cases = [(vec![2, 0], -1, "x1 . x1"), (vec![1, 1], 0, "x1 + x2"), (vec![1, -1], 0, "x1 - x2"), (vec![-3, 0], 2, "2 - 3x1")];
        for (a, b, text) in cases {
            let l = LinearForm::new(a.iter().map(|&x| q(x)).collect(), q(b));
            let t = truncated_form(&l);
            for i in 0..=6 {
                for j in 0..=6 {
                    let x = pt(&[qr(i, 6), qr(j, 6)]);
                    let want = l.eval(x.coords()).max(q(0)).min(q(1));
                    assert_eq!(eval_term(&t, &x).unwrap(), want, "{}", text);
                }
            }
        }
    }

    #[test]
    fn base_hats() {
        let p = ProvenancedComplex::new(1);
        assert_eq!(print_term(&term_for_hat(&p, &pt(&[q(0)])).unwrap()), "~x1");
        let p = ProvenancedComplex::new(2);
        let hats = schauder_hats(p.complex()).unwrap();
        for (v, h) in p.complex().vertices().iter().zip(&hats.hats) {
            let t = term_for_hat(&p, v).unwrap();
            assert_eq!(pwl_equal(&compile(&t, 2).unwrap(), h), Ok(true));
        }
    }

    #[test]
    fn hats_after_blow_ups() {
        let p = ProvenancedComplex::from_history(1, vec![pt(&[qr(1, 2)])]).unwrap();
        let t = term_for_hat(&p, &pt(&[qr(1, 2)])).unwrap();
        assert!(same(&t, "x1 /\\ ~x1", 1));
        let p = ProvenancedComplex::from_history(1, vec![pt(&[qr(1, 2)]), pt(&[qr(1, 3)])]).unwrap();
        let t = term_for_hat(&p, &pt(&[qr(1, 3)])).unwrap();
        assert!(same(&t, "(~x1 - (x1 /\\ ~x1)) /\\ (x1 /\\ ~x1)", 1));
        let f = compile(&t, 1).unwrap();
        assert_eq!(f.eval(&[qr(1, 3)]), Ok(qr(1, 3)));
        assert_eq!(f.eval(&[qr(1, 4)]), Ok(qr(1, 4)));
        assert_eq!(f.eval(&[qr(2, 5)]), Ok(qr(1, 5)));
        assert!(matches!(term_for_hat(&p, &pt(&[qr(1, 5)])), Err(SynthError::NotAVertex(_))));
    }

    #[test]
    fn non_mediant_history_falls_back() {
        // 2/5 is not the sum of the carrier vertices of [0,1]
        let p = ProvenancedComplex::from_history(1, vec![pt(&[qr(1, 2)]), pt(&[qr(2, 5)])]).unwrap();
        assert!(incremental_hats(&p).is_none());
        let v = pt(&[qr(1, 2)]);
        let t = term_for_hat(&p, &v);
        // the complex is not regular, so there is no Schauder hat to synthesize
        assert!(matches!(t, Err(SynthError::History(_))));
    }

    #[test]
    fn square_centre_blow_up() {
        let p = ProvenancedComplex::from_history(2, vec![pt(&[qr(1, 2), qr(1, 2)]), pt(&[qr(1, 3), qr(2, 3)])]).unwrap();
        assert!(incremental_hats(&p).is_some());
        let hats = schauder_hats(p.complex()).unwrap();
        for (t, h) in hat_terms(&p).unwrap().iter().zip(&hats.hats) {
            assert_eq!(pwl_equal(&compile(t, 2).unwrap(), h), Ok(true));
        }
    }

    fn mediant_history(n: usize, picks: &[(usize, usize)]) -> ProvenancedComplex {
        let mut p = ProvenancedComplex::new(n);
        for &(s, e) in picks {
            let c = p.complex().clone();
            let t = &c.maximal()[s % c.maximal().len()];
            let edges: Vec<_> = t.faces().into_iter().filter(|f| f.dim() == 1).collect();
            let edge = &edges[e % edges.len()];
            let h: Vec<BigInt> = edge.vertices()[0]
                .homogeneous()
                .iter()
                .zip(edge.vertices()[1].homogeneous())
                .map(|(a, b)| a + b)
                .collect();
            p.blow_up(RationalPoint::from_homogeneous(&h).unwrap()).unwrap();
        }
        p
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn round_trip((n, t) in (1usize..=2).prop_flat_map(|n| (Just(n), term_strategy(n, 4)))) {
            let f = compile(&t, n).unwrap();
            let s = synthesize_term(&f).unwrap();
            prop_assert_eq!(pwl_equal(&compile(&s, n).unwrap(), &f), Ok(true));
        }

        #[test]
        fn mediant_hats_agree_with_schauder_hats(
            n in 1usize..=2,
            picks in proptest::collection::vec((0usize..16, 0usize..3), 0..4),
        ) {
            let p = mediant_history(n, &picks);
            prop_assert!(incremental_hats(&p).is_some());
            let hats = schauder_hats(p.complex()).unwrap();
            for (t, h) in hat_terms(&p).unwrap().iter().zip(&hats.hats) {
                prop_assert_eq!(pwl_equal(&compile(t, n).unwrap(), h), Ok(true));
            }
        }
    }
}
