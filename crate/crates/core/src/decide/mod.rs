//! Decision procedures for finitely generated subalgebras of free
//! MV-algebras, each answering with a verdict and a replayable witness.

use std::collections::HashMap;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::cancel::{CancelToken, Cancelled};
use crate::geometry::linalg;
use crate::geometry::{desingularize_with, Complex, RationalPoint, Simplex};
use crate::hats::HatError;
use crate::mvterm::{eval_term, Term, TermError};
use crate::pwl::{image_complex, overlap_defect, ImageCell, PwlError, ZMap};
use crate::rational::Q;
use crate::synth::SynthError;

mod basis;
mod quotient;
#[cfg(test)]
mod tests;

pub use basis::{basis_from_generators, subalgebras_equal, Basis, EqualityReport, InclusionWitness};
pub use quotient::{generators_to_quotient, quotient_embeddable, EmbedCondition, EmbedReport, QuotientTerm};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DecideError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("empty generator list")]
    NoGenerators,
    #[error(transparent)]
    Term(#[from] TermError),
    #[error("cancelled")]
    Cancelled,
    #[error("internal check failed: {0}")]
    Internal(String),
}

impl From<Cancelled> for DecideError {
    fn from(_: Cancelled) -> Self {
        DecideError::Cancelled
    }
}

impl From<PwlError> for DecideError {
    fn from(e: PwlError) -> Self {
        DecideError::Internal(e.to_string())
    }
}

impl From<HatError> for DecideError {
    fn from(e: HatError) -> Self {
        DecideError::Internal(e.to_string())
    }
}

impl From<SynthError> for DecideError {
    fn from(e: SynthError) -> Self {
        DecideError::Internal(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CollisionKind {
    /// Two vertices of the linearizing triangulation share an image.
    Vertices,
    /// A simplex is mapped onto a lower-dimensional set.
    Collapse,
    /// Two image simplexes meet outside a common face.
    Overlap,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeparationWitness {
    pub x: RationalPoint,
    pub y: RationalPoint,
    pub kind: CollisionKind,
}

impl SeparationWitness {
    /// True iff `x != y` and every generator agrees on them.
    pub fn replay(&self, terms: &[Term]) -> bool {
        self.x != self.y
            && terms
                .iter()
                .all(|t| matches!((eval_term(t, &self.x), eval_term(t, &self.y)), (Ok(a), Ok(b)) if a == b))
    }
}

#[derive(Debug, Clone)]
pub struct SeparationReport {
    pub verdict: bool,
    pub witness: Option<SeparationWitness>,
    pub linearizer: Complex,
    /// Images of the non-collapsed simplexes of the linearizer.
    pub image: Complex,
    /// Separating subalgebras are projective.
    pub projective: bool,
    pub(crate) map: ZMap,
}

impl SeparationReport {
    pub fn map(&self) -> &ZMap {
        &self.map
    }
}

fn generators(terms: &[Term], n: usize) -> Result<ZMap, DecideError> {
    if terms.is_empty() {
        return Err(DecideError::NoGenerators);
    }
    Ok(ZMap::from_terms(terms, n)?)
}

/// Decides whether the functions of `terms` separate the points of
/// `[0,1]^n`.
pub fn check_separation(terms: &[Term], n: usize) -> Result<SeparationReport, DecideError> {
    let g = generators(terms, n)?;
    let delta = g.carrier().clone();
    let ic = image_complex(&g, &delta)?;
    let witness = vertex_collision(&g, &delta)
        .or_else(|| ic.cells.iter().find(|c| c.is_degenerate()).map(collapse_witness))
        .or_else(|| {
            overlap_defect(&ic.cells).map(|(i, j, p)| SeparationWitness {
                x: preimage(&ic.cells[i], &p),
                y: preimage(&ic.cells[j], &p),
                kind: CollisionKind::Overlap,
            })
        });
    let verdict = witness.is_none();
    Ok(SeparationReport {
        verdict,
        witness,
        linearizer: delta,
        image: Complex::from_simplexes(g.k(), ic.simplexes()),
        projective: verdict,
        map: g,
    })
}

fn vertex_collision(g: &ZMap, delta: &Complex) -> Option<SeparationWitness> {
    let mut seen: HashMap<Vec<Q>, RationalPoint> = HashMap::new();
    for v in delta.vertices() {
        let y = g.apply(v.coords()).expect("vertex of the carrier");
        if let Some(u) = seen.get(&y) {
            return Some(SeparationWitness {
                x: u.clone(),
                y: v,
                kind: CollisionKind::Vertices,
            });
        }
        seen.insert(y, v);
    }
    None
}

// an affine dependency μ of the images, split into its positive and
// negative parts, gives two distinct points with one image
fn collapse_witness(c: &ImageCell) -> SeparationWitness {
    let cols = c.points.len();
    let mut rows: Vec<Vec<Q>> = (0..c.points[0].len())
        .map(|r| c.points.iter().map(|p| p[r].clone()).collect())
        .collect();
    rows.push(vec![Q::from_integer(1.into()); cols]);
    let mu = linalg::nullspace(&rows, cols).swap_remove(0);
    let total: Q = mu.iter().filter(|m| m.is_positive()).sum();
    let mix = |sign: bool| -> RationalPoint {
        let n = c.source.ambient();
        let mut x = vec![Q::zero(); n];
        for (m, v) in mu.iter().zip(c.source.vertices()) {
            if m.is_positive() == sign && !m.is_zero() {
                let w = m.abs() / &total;
                for (xi, vi) in x.iter_mut().zip(v.coords()) {
                    *xi += &w * vi;
                }
            }
        }
        RationalPoint::new(x).expect("convex combination")
    };
    SeparationWitness {
        x: mix(true),
        y: mix(false),
        kind: CollisionKind::Collapse,
    }
}

fn preimage(c: &ImageCell, p: &[Q]) -> RationalPoint {
    let rows: Vec<Vec<Q>> = c
        .points
        .iter()
        .map(|q| q.iter().cloned().chain(std::iter::once(Q::from_integer(1.into()))).collect())
        .collect();
    let target: Vec<Q> = p.iter().cloned().chain(std::iter::once(Q::from_integer(1.into()))).collect();
    let lambda = linalg::solve_left(&rows, &target).expect("point of the image simplex");
    let mut x = vec![Q::zero(); c.source.ambient()];
    for (l, v) in lambda.iter().zip(c.source.vertices()) {
        for (xi, vi) in x.iter_mut().zip(v.coords()) {
            *xi += l * vi;
        }
    }
    RationalPoint::new(x).expect("point of the source simplex")
}

#[derive(Debug, Clone, PartialEq)]
pub struct DenominatorWitness {
    pub vertex: RationalPoint,
    pub image: RationalPoint,
}

impl DenominatorWitness {
    pub fn replay(&self, terms: &[Term]) -> bool {
        let image: Option<Vec<Q>> = terms.iter().map(|t| eval_term(t, &self.vertex).ok()).collect();
        image.as_deref() == Some(self.image.coords()) && self.vertex.denominator() != self.image.denominator()
    }
}

#[derive(Debug, Clone)]
pub struct IsoReport {
    pub verdict: bool,
    /// An image simplex that is not regular.
    pub bad_simplex: Option<Simplex>,
    /// A vertex whose image has a smaller denominator.
    pub bad_vertex: Option<DenominatorWitness>,
    /// The regular linearizing triangulation used for the test.
    pub regular_linearizer: Complex,
}

fn require_separating(terms: &[Term], n: usize) -> Result<SeparationReport, DecideError> {
    let s = check_separation(terms, n)?;
    if !s.verdict {
        return Err(DecideError::Precondition("generators do not separate points".into()));
    }
    Ok(s)
}

/// For separating generators: is the generated subalgebra isomorphic to the
/// free algebra?
pub fn check_iso_to_free(terms: &[Term], n: usize, token: &CancelToken) -> Result<IsoReport, DecideError> {
    let s = require_separating(terms, n)?;
    iso_from_separation(&s, token)
}

fn iso_from_separation(s: &SeparationReport, token: &CancelToken) -> Result<IsoReport, DecideError> {
    let sigma = desingularize_with(&s.linearizer, token)?.complex;
    let g = s.map.refine(&sigma)?;
    let ic = image_complex(&g, &sigma)?;
    let bad_simplex = ic.simplexes().into_iter().find(|t| !t.is_regular());
    let bad_vertex = if bad_simplex.is_some() {
        None
    } else {
        sigma.vertices().into_iter().find_map(|v| {
            let image = RationalPoint::new(g.apply(v.coords()).ok()?).ok()?;
            (image.denominator() != v.denominator()).then_some(DenominatorWitness { vertex: v, image })
        })
    };
    Ok(IsoReport {
        verdict: bad_simplex.is_none() && bad_vertex.is_none(),
        bad_simplex,
        bad_vertex,
        regular_linearizer: sigma,
    })
}

/// Free and separating iff separating and isomorphic to the free algebra.
pub fn check_free_and_separating(terms: &[Term], n: usize, token: &CancelToken) -> Result<bool, DecideError> {
    let s = check_separation(terms, n)?;
    Ok(s.verdict && iso_from_separation(&s, token)?.verdict)
}

/// Does the subalgebra coincide with the whole free algebra?
pub fn check_equals_free(terms: &[Term], n: usize, token: &CancelToken) -> Result<bool, DecideError> {
    let s = check_separation(terms, n)?;
    Ok(s.verdict && iso_from_separation(&s, token)?.verdict)
}
