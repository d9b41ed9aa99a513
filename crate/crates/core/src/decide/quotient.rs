use num_traits::One;

use crate::cancel::CancelToken;
use crate::geometry::{
    arrangement_complex, blow_up, desingularize_with, is_connected, is_strongly_regular, standard_cube_triangulation,
    support_equal, Complex, Polytope,
};
use crate::hats::schauder_hats;
use crate::mvterm::{BinOp, Term};
use crate::pwl::{compile, range_polyhedron, zeroset};
use crate::synth::synthesize_term;

use super::{generators, DecideError};

/// A term `σ` in `k` variables whose zero set is the range of the
/// generators, so that the subalgebra is presented as the quotient of the
/// free algebra on `k` generators by the ideal of `σ`.
#[derive(Debug, Clone)]
pub struct QuotientTerm {
    pub sigma: Term,
    pub k: usize,
    pub range: Complex,
    /// Regular triangulation of `[0,1]^k` in which the range is a full
    /// subcomplex.
    pub triangulation: Complex,
}

pub fn generators_to_quotient(terms: &[Term], n: usize, token: &CancelToken) -> Result<QuotientTerm, DecideError> {
    let g = generators(terms, n)?;
    let k = g.k();
    let range = range_polyhedron(&g);
    let polys: Vec<Polytope> = range
        .maximal()
        .iter()
        .chain(standard_cube_triangulation(k).maximal())
        .map(|s| s.to_polytope())
        .collect();
    let mut delta = desingularize_with(&arrangement_complex(k, &polys), token)?.complex;
    // make every face spanned by points of the range lie in the range
    loop {
        token.check()?;
        let bad = delta.faces().into_iter().find(|f| {
            f.dim() > 0
                && f.vertices().iter().all(|v| range.contains_point(v.coords()))
                && !range.contains_point(f.barycenter().coords())
        });
        let Some(f) = bad else { break };
        let c = blow_up(&delta, &f.barycenter()).map_err(|e| DecideError::Internal(e.to_string()))?;
        delta = desingularize_with(&c, token)?.complex;
    }
    let hats = schauder_hats(&delta)?;
    let mut outside = Vec::new();
    for (v, h) in delta.vertices().iter().zip(&hats.hats) {
        if !range.contains_point(v.coords()) {
            token.check()?;
            outside.push(synthesize_term(h)?);
        }
    }
    let sigma = Term::fold(BinOp::OPlus, outside, Term::zero());
    let z = zeroset(&compile(&sigma, k)?);
    if !support_equal(&z, &range) {
        return Err(DecideError::Internal("zero set differs from the range".into()));
    }
    Ok(QuotientTerm {
        sigma,
        k,
        range,
        triangulation: delta,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmbedCondition {
    /// The zero set contains a vertex of the cube.
    CubeVertex,
    /// The zero set is connected.
    Connected,
    /// The zero set is strongly regular.
    StronglyRegular,
}

impl EmbedCondition {
    pub fn label(self) -> &'static str {
        match self {
            EmbedCondition::CubeVertex => "a",
            EmbedCondition::Connected => "b",
            EmbedCondition::StronglyRegular => "c",
        }
    }
}

#[derive(Debug, Clone)]
pub struct EmbedReport {
    pub verdict: bool,
    /// First condition that fails.
    pub failed: Option<EmbedCondition>,
    /// The zero set is empty and the quotient is trivial.
    pub trivial: bool,
    /// Regular triangulation of the zero set.
    pub zeroset: Complex,
}

/// Can the quotient by `σ` be embedded in the free algebra on `k`
/// generators?
pub fn quotient_embeddable(sigma: &Term, k: usize, token: &CancelToken) -> Result<EmbedReport, DecideError> {
    let z = zeroset(&compile(sigma, k)?);
    if z.is_empty() {
        return Ok(EmbedReport {
            verdict: false,
            failed: Some(EmbedCondition::CubeVertex),
            trivial: true,
            zeroset: z,
        });
    }
    let z = desingularize_with(&z, token)?.complex;
    let failed = if !z.vertices().iter().any(|v| v.denominator().is_one()) {
        Some(EmbedCondition::CubeVertex)
    } else if !is_connected(&z).expect("nonempty") {
        Some(EmbedCondition::Connected)
    } else if !is_strongly_regular(&z).expect("regular") {
        Some(EmbedCondition::StronglyRegular)
    } else {
        None
    };
    Ok(EmbedReport {
        verdict: failed.is_none(),
        failed,
        trivial: false,
        zeroset: z,
    })
}
