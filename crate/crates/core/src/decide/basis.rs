use num_traits::One;

use crate::cancel::CancelToken;
use crate::geometry::{desingularize_with, Complex, RationalPoint, Simplex};
use crate::hats::{hats_of, is_basic, verify_unit_partition, HatSet, WeightedTriangulation};
use crate::mvterm::{eval_term, Term};
use crate::pwl::{image_complex, linearizing_triangulation, PwlFunction, ZMap};
use crate::rational::{qi, Q};
use crate::synth::synthesize_term;

use super::{preimage, require_separating, DecideError};

/// A triangulation `Δ` on which `g` and every function of `extra` are
/// linear and `g` maps each simplex onto a regular simplex.
pub(crate) fn basic_presentation(
    g: &ZMap,
    extra: &[PwlFunction],
    token: &CancelToken,
) -> Result<(Complex, ZMap), DecideError> {
    let n = g.arity();
    let mut all = g.components().to_vec();
    all.extend(extra.iter().cloned());
    let joint = linearizing_triangulation(&all)?;
    let sigma = desingularize_with(&joint, token)?.complex;
    let g0 = g.refine(&sigma)?;
    let ic = image_complex(&g0, &sigma)?;
    let image = Complex::from_simplexes(g.k(), ic.simplexes());
    let nabla = desingularize_with(&image, token)?.complex;
    let targets: Vec<Simplex> = ic
        .cells
        .iter()
        .map(|c| Simplex::from_unchecked(c.points.iter().cloned().map(RationalPoint::from_vec).collect()))
        .collect();
    let mut pulled = Vec::with_capacity(nabla.maximal().len());
    for u in nabla.maximal() {
        token.check()?;
        let b = u.barycenter();
        let i = targets
            .iter()
            .position(|t| t.contains(b.coords()) && u.vertices().iter().all(|w| t.contains(w.coords())))
            .ok_or_else(|| DecideError::Internal("refined image simplex has no source".into()))?;
        let vs = u.vertices().iter().map(|w| preimage(&ic.cells[i], w.coords())).collect();
        pulled.push(Simplex::from_unchecked(vs));
    }
    let delta = Complex::from_simplexes(n, pulled);
    let gd = g0.refine(&delta)?;
    Ok((delta, gd))
}

fn image_denominator(g: &ZMap, v: &RationalPoint) -> Q {
    let y = RationalPoint::new(g.apply(v.coords()).expect("vertex of the carrier")).expect("inside the cube");
    qi(&y.denominator())
}

#[derive(Debug, Clone)]
pub struct Basis {
    pub weighted: WeightedTriangulation,
    pub hats: HatSet,
    /// One term per hat, in vertex order.
    pub terms: Vec<Term>,
}

/// A basis of the subalgebra generated by separating `terms`: the hats of
/// a basic weighted triangulation with weights `den(v) / den(g(v))`.
pub fn basis_from_generators(terms: &[Term], n: usize, token: &CancelToken) -> Result<Basis, DecideError> {
    let s = require_separating(terms, n)?;
    let (delta, gd) = basic_presentation(&s.map, &[], token)?;
    let weights = delta
        .vertices()
        .iter()
        .map(|v| (qi(&v.denominator()) / image_denominator(&gd, v)).to_integer())
        .collect();
    let weighted = WeightedTriangulation::new(delta, weights)?;
    if !is_basic(&weighted) {
        return Err(DecideError::Internal("weighted triangulation is not basic".into()));
    }
    let hats = hats_of(&weighted);
    if !verify_unit_partition(&hats)? {
        return Err(DecideError::Internal("hats do not partition unity".into()));
    }
    let hat_terms = hats.hats.iter().map(synthesize_term).collect::<Result<Vec<_>, _>>()?;
    if !subalgebras_equal(terms, &hat_terms, n, token)?.verdict {
        return Err(DecideError::Internal("hats generate a different subalgebra".into()));
    }
    Ok(Basis {
        weighted,
        hats,
        terms: hat_terms,
    })
}

/// Generator `generator` of one side is missing from the other side's
/// algebra: its value at `vertex` is not an integer multiple of `quantum`,
/// the least positive value the other algebra takes there.
#[derive(Debug, Clone, PartialEq)]
pub struct InclusionWitness {
    /// 0 if a generator of the second list escapes the first algebra, 1
    /// for the converse.
    pub side: usize,
    pub generator: usize,
    pub simplex: Simplex,
    pub vertex: RationalPoint,
    pub value: Q,
    pub quantum: Q,
}

impl InclusionWitness {
    pub fn replay(&self, first: &[Term], second: &[Term]) -> bool {
        let (inner, outer) = if self.side == 0 { (first, second) } else { (second, first) };
        let Some(t) = outer.get(self.generator) else { return false };
        let value_ok = eval_term(t, &self.vertex).ok().as_ref() == Some(&self.value);
        let image: Option<Vec<Q>> = inner.iter().map(|t| eval_term(t, &self.vertex).ok()).collect();
        let quantum_ok = image
            .and_then(|y| RationalPoint::new(y).ok())
            .is_some_and(|y| Q::one() / qi(&y.denominator()) == self.quantum);
        value_ok && quantum_ok && !(&self.value / &self.quantum).is_integer() && self.simplex.vertices().contains(&self.vertex)
    }
}

#[derive(Debug, Clone)]
pub struct EqualityReport {
    pub verdict: bool,
    pub witness: Option<InclusionWitness>,
}

/// Decides whether two separating generator lists generate the same
/// subalgebra.
pub fn subalgebras_equal(
    first: &[Term],
    second: &[Term],
    n: usize,
    token: &CancelToken,
) -> Result<EqualityReport, DecideError> {
    let a = require_separating(first, n)?;
    let b = require_separating(second, n)?;
    let witness = match missing_generator(&a.map, b.map.components(), token)? {
        Some(w) => Some(InclusionWitness { side: 0, ..w }),
        None => missing_generator(&b.map, a.map.components(), token)?.map(|w| InclusionWitness { side: 1, ..w }),
    };
    Ok(EqualityReport {
        verdict: witness.is_none(),
        witness,
    })
}

fn missing_generator(
    g: &ZMap,
    others: &[PwlFunction],
    token: &CancelToken,
) -> Result<Option<InclusionWitness>, DecideError> {
    let (delta, gd) = basic_presentation(g, others, token)?;
    for (j, f) in others.iter().enumerate() {
        let f = f.restrict_to(&delta)?;
        for (t, piece) in delta.maximal().iter().zip(f.pieces()) {
            for v in t.vertices() {
                let value = piece.eval(v.coords());
                let den = image_denominator(&gd, v);
                if !(&value * &den).is_integer() {
                    return Ok(Some(InclusionWitness {
                        side: 0,
                        generator: j,
                        simplex: t.clone(),
                        vertex: v.clone(),
                        value,
                        quantum: Q::one() / den,
                    }));
                }
            }
        }
    }
    Ok(None)
}
