//! Piecewise-linear functions over rational triangulations.

mod compile;
mod zmap;

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::linalg::{self, dot};
use crate::geometry::{
    joint_subdivision, overlay_cells, support_equal, Complex, ComplexJson, GeometryError, Halfspace,
    RationalPoint, Simplex,
};
use crate::rational::{format_q, is_integer, parse_q, Q};

pub use compile::compile;
pub use zmap::{
    image_complex, linearizing_triangulation, range_polyhedron, zeroset, ImageCell, ImageComplex, ZMap,
};
pub(crate) use zmap::overlap_defect;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PwlError {
    #[error("point {0} lies outside the support")]
    OutsideSupport(String),
    #[error("supports differ")]
    SupportMismatch,
    #[error("{0} pieces for {1} simplexes")]
    PieceCount(usize, usize),
    #[error("function is not linear on the given triangulation")]
    NotLinear,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("malformed input: {0}")]
    Format(String),
}

/// `coeffs · x + constant`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearForm {
    pub coeffs: Vec<Q>,
    pub constant: Q,
}

impl LinearForm {
    pub fn new(coeffs: Vec<Q>, constant: Q) -> Self {
        LinearForm { coeffs, constant }
    }

    pub fn constant(n: usize, c: Q) -> Self {
        LinearForm::new(vec![Q::zero(); n], c)
    }

    pub fn coordinate(n: usize, i: usize) -> Self {
        let mut coeffs = vec![Q::zero(); n];
        coeffs[i] = Q::one();
        LinearForm::new(coeffs, Q::zero())
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn eval(&self, x: &[Q]) -> Q {
        dot(&self.coeffs, x) + &self.constant
    }

    pub fn add(&self, o: &LinearForm) -> LinearForm {
        LinearForm::new(
            self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
            &self.constant + &o.constant,
        )
    }

    pub fn sub(&self, o: &LinearForm) -> LinearForm {
        self.add(&o.scale(&-Q::one()))
    }

    pub fn scale(&self, s: &Q) -> LinearForm {
        LinearForm::new(self.coeffs.iter().map(|a| a * s).collect(), &self.constant * s)
    }

    pub fn plus_constant(&self, c: &Q) -> LinearForm {
        LinearForm::new(self.coeffs.clone(), &self.constant + c)
    }

    /// `1 - self`.
    pub fn complement(&self) -> LinearForm {
        self.scale(&-Q::one()).plus_constant(&Q::one())
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(is_integer) && is_integer(&self.constant)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The halfspace `self >= 0`.
    pub fn nonnegative(&self) -> Halfspace {
        Halfspace::new(self.coeffs.clone(), self.constant.clone())
    }

    /// Affine interpolation of `values` at the vertices of `s`. Unique for
    /// full-dimensional simplexes; otherwise some interpolant.
    pub fn interpolate(s: &Simplex, values: &[Q]) -> LinearForm {
        let n = s.ambient();
        let m = s.vertices().len();
        // columns of the (vertex, 1) matrix as rows
        let mt: Vec<Vec<Q>> = (0..=n)
            .map(|c| {
                (0..m)
                    .map(|i| if c < n { s.vertices()[i].coords()[c].clone() } else { Q::one() })
                    .collect()
            })
            .collect();
        let z = linalg::solve_left(&mt, values).expect("independent vertices admit interpolation");
        LinearForm::new(z[..n].to_vec(), z[n].clone())
    }
}

impl fmt::Debug for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first || c.is_negative() {
                write!(f, "{}", if c.is_negative() { "-" } else { "+" })?;
            }
            let a = c.abs();
            if a.is_one() {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "{}x{}", a, i + 1)?;
            }
            first = false;
        }
        if first {
            write!(f, "{}", self.constant)
        } else if self.constant.is_zero() {
            Ok(())
        } else if self.constant.is_negative() {
            write!(f, "-{}", self.constant.abs())
        } else {
            write!(f, "+{}", self.constant)
        }
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A continuous function given by one affine form per maximal simplex of its
/// carrier. Values are MV-valued (in `[0,1]`) unless built by [`lincomb`].
#[derive(Clone, Debug, PartialEq)]
pub struct PwlFunction {
    carrier: Complex,
    pieces: Vec<LinearForm>,
    group_valued: bool,
}

impl PwlFunction {
    pub fn new(carrier: Complex, pieces: Vec<LinearForm>) -> Result<Self, PwlError> {
        if carrier.maximal().len() != pieces.len() {
            return Err(PwlError::PieceCount(pieces.len(), carrier.maximal().len()));
        }
        Ok(PwlFunction {
            carrier,
            pieces,
            group_valued: false,
        })
    }

    pub fn from_vertex_values(carrier: Complex, value: impl Fn(&RationalPoint) -> Q) -> Self {
        let mut cache: HashMap<RationalPoint, Q> = HashMap::new();
        let pieces = carrier
            .maximal()
            .iter()
            .map(|s| {
                let vals: Vec<Q> = s
                    .vertices()
                    .iter()
                    .map(|v| cache.entry(v.clone()).or_insert_with(|| value(v)).clone())
                    .collect();
                LinearForm::interpolate(s, &vals)
            })
            .collect();
        PwlFunction {
            carrier,
            pieces,
            group_valued: false,
        }
    }

    pub fn constant(carrier: Complex, c: Q) -> Self {
        let n = carrier.ambient();
        let pieces = vec![LinearForm::constant(n, c); carrier.maximal().len()];
        PwlFunction {
            carrier,
            pieces,
            group_valued: false,
        }
    }

    pub fn carrier(&self) -> &Complex {
        &self.carrier
    }

    pub fn pieces(&self) -> &[LinearForm] {
        &self.pieces
    }

    pub fn ambient(&self) -> usize {
        self.carrier.ambient()
    }

    pub fn is_group_valued(&self) -> bool {
        self.group_valued
    }

    pub fn is_integral(&self) -> bool {
        self.pieces.iter().all(LinearForm::is_integral)
    }

    pub fn eval(&self, x: &[Q]) -> Result<Q, PwlError> {
        let i = self
            .carrier
            .locate(x)
            .ok_or_else(|| PwlError::OutsideSupport(format!("{:?}", x)))?;
        Ok(self.pieces[i].eval(x))
    }

    /// The same function on a triangulation refining the carrier.
    pub fn restrict_to(&self, finer: &Complex) -> Result<PwlFunction, PwlError> {
        if finer == &self.carrier {
            return Ok(self.clone());
        }
        let pieces = finer
            .maximal()
            .iter()
            .map(|s| {
                let b = s.barycenter();
                let i = self
                    .carrier
                    .locate(b.coords())
                    .ok_or_else(|| PwlError::OutsideSupport(b.to_string()))?;
                Ok(self.pieces[i].clone())
            })
            .collect::<Result<Vec<_>, PwlError>>()?;
        Ok(PwlFunction {
            carrier: finer.clone(),
            pieces,
            group_valued: self.group_valued,
        })
    }

    pub fn to_json(&self) -> PwlJson {
        PwlJson {
            carrier: self.carrier.to_json(),
            pieces: self
                .pieces
                .iter()
                .enumerate()
                .map(|(i, l)| PieceJson {
                    simplex: i,
                    coeffs: l.coeffs.iter().map(format_q).collect(),
                    constant: format_q(&l.constant),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &PwlJson) -> Result<Self, PwlError> {
        let carrier = Complex::from_json(&j.carrier)?;
        let n = carrier.ambient();
        let mut pieces: Vec<Option<LinearForm>> = vec![None; carrier.maximal().len()];
        // simplex indexes refer to the order listed in the file
        let listed: Vec<Simplex> = j
            .carrier
            .simplexes
            .iter()
            .map(|s| Complex::from_json(&ComplexJson { dim: n, simplexes: vec![s.clone()] }))
            .map(|c| c.map(|c| c.maximal()[0].clone()))
            .collect::<Result<_, _>>()?;
        let parse = |t: &str| parse_q(t).ok_or_else(|| PwlError::Format(format!("bad rational '{}'", t)));
        for p in &j.pieces {
            let s = listed
                .get(p.simplex)
                .ok_or_else(|| PwlError::Format(format!("simplex index {} out of range", p.simplex)))?;
            let pos = carrier
                .maximal()
                .iter()
                .position(|t| t == s)
                .ok_or_else(|| PwlError::Format("piece on a non-maximal simplex".into()))?;
            if p.coeffs.len() != n {
                return Err(PwlError::Format("coefficient count differs from dim".into()));
            }
            let coeffs = p.coeffs.iter().map(|c| parse(c)).collect::<Result<Vec<_>, _>>()?;
            pieces[pos] = Some(LinearForm::new(coeffs, parse(&p.constant)?));
        }
        let pieces = pieces
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| PwlError::Format("missing piece".into()))?;
        let f = PwlFunction::new(carrier, pieces)?;
        // continuity: pieces of simplexes sharing a vertex agree there
        let mut seen: HashMap<&RationalPoint, Q> = HashMap::new();
        for (s, l) in f.carrier.maximal().iter().zip(&f.pieces) {
            for v in s.vertices() {
                let val = l.eval(v.coords());
                if let Some(prev) = seen.get(v) {
                    if *prev != val {
                        return Err(PwlError::Format(format!("pieces disagree at {}", v)));
                    }
                } else {
                    seen.insert(v, val);
                }
            }
        }
        Ok(f)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PwlJson {
    pub carrier: ComplexJson,
    pub pieces: Vec<PieceJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PieceJson {
    pub simplex: usize,
    pub coeffs: Vec<String>,
    #[serde(rename = "const")]
    pub constant: String,
}

pub fn eval_pwl(f: &PwlFunction, x: &RationalPoint) -> Result<Q, PwlError> {
    if x.dim() != f.ambient() {
        return Err(PwlError::Geometry(GeometryError::DimensionMismatch {
            expected: f.ambient(),
            found: x.dim(),
        }));
    }
    f.eval(x.coords())
}

/// A point where `f` and `g` differ, or `None` when they are equal.
pub fn pwl_disagreement(f: &PwlFunction, g: &PwlFunction) -> Result<Option<RationalPoint>, PwlError> {
    if f.carrier != g.carrier && !support_equal(&f.carrier, &g.carrier) {
        return Err(PwlError::SupportMismatch);
    }
    if f.carrier == g.carrier {
        for (s, (a, b)) in f.carrier.maximal().iter().zip(f.pieces.iter().zip(&g.pieces)) {
            if let Some(w) = cell_witness(s.vertices().iter().map(|v| v.coords().to_vec()).collect(), a, b) {
                return Ok(Some(w));
            }
        }
        return Ok(None);
    }
    for (i, j, p) in overlay_cells(&f.carrier, &g.carrier) {
        if let Some(w) = cell_witness(p.vertices().to_vec(), &f.pieces[i], &g.pieces[j]) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

// prefers the cell barycenter as witness, falling back to a vertex
fn cell_witness(vertices: Vec<Vec<Q>>, a: &LinearForm, b: &LinearForm) -> Option<RationalPoint> {
    let bad = vertices.iter().find(|v| a.eval(v) != b.eval(v))?;
    let m = Q::from_integer(vertices.len().into());
    let n = bad.len();
    let center: Vec<Q> = (0..n).map(|k| vertices.iter().map(|v| &v[k]).sum::<Q>() / &m).collect();
    let w = if a.eval(&center) != b.eval(&center) { center } else { bad.clone() };
    Some(RationalPoint::from_vec(w))
}

/// Exact semantic equality.
pub fn pwl_equal(f: &PwlFunction, g: &PwlFunction) -> Result<bool, PwlError> {
    Ok(pwl_disagreement(f, g)?.is_none())
}

/// Pointwise integer combination `Σ m_i f_i`, valued in the unital
/// ℓ-group (no truncation).
pub fn lincomb(fs: &[PwlFunction], ms: &[i64]) -> Result<PwlFunction, PwlError> {
    assert_eq!(fs.len(), ms.len(), "one multiplier per function");
    let carrier = linearizing_triangulation(fs)?;
    let n = carrier.ambient();
    let restricted: Vec<PwlFunction> = fs.iter().map(|f| f.restrict_to(&carrier)).collect::<Result<_, _>>()?;
    let pieces = (0..carrier.maximal().len())
        .map(|t| {
            restricted
                .iter()
                .zip(ms)
                .fold(LinearForm::constant(n, Q::zero()), |acc, (f, &m)| {
                    acc.add(&f.pieces[t].scale(&Q::from_integer(m.into())))
                })
        })
        .collect();
    Ok(PwlFunction {
        carrier,
        pieces,
        group_valued: true,
    })
}

pub(crate) fn join_all_carriers(fs: &[PwlFunction]) -> Result<Complex, PwlError> {
    let first = fs.first().ok_or(PwlError::Geometry(GeometryError::EmptyComplex))?;
    let mut acc = first.carrier.clone();
    for f in &fs[1..] {
        acc = joint_subdivision(&acc, &f.carrier).map_err(|e| match e {
            GeometryError::SupportMismatch => PwlError::SupportMismatch,
            e => PwlError::Geometry(e),
        })?;
    }
    Ok(acc)
}
