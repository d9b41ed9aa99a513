use num_traits::{Signed, Zero};

use crate::geometry::linalg;
use crate::geometry::polytope::{bboxes_overlap, Polytope};
use crate::geometry::{arrangement_complex, Complex, RationalPoint, Simplex};
use crate::mvterm::{Term, TermError};
use crate::rational::Q;

use super::{compile, join_all_carriers, PwlError, PwlFunction};

/// A tuple of functions sharing one carrier on which all are linear.
#[derive(Clone, Debug)]
pub struct ZMap {
    carrier: Complex,
    components: Vec<PwlFunction>,
}

impl ZMap {
    pub fn new(fs: &[PwlFunction]) -> Result<Self, PwlError> {
        let carrier = linearizing_triangulation(fs)?;
        let components = fs.iter().map(|f| f.restrict_to(&carrier)).collect::<Result<_, _>>()?;
        Ok(ZMap { carrier, components })
    }

    pub fn from_terms(terms: &[Term], n: usize) -> Result<Self, TermError> {
        let fs = terms.iter().map(|t| compile(t, n)).collect::<Result<Vec<_>, _>>()?;
        Ok(ZMap::new(&fs).expect("compiled functions live on the whole cube"))
    }

    pub fn carrier(&self) -> &Complex {
        &self.carrier
    }

    pub fn components(&self) -> &[PwlFunction] {
        &self.components
    }

    pub fn arity(&self) -> usize {
        self.carrier.ambient()
    }

    pub fn k(&self) -> usize {
        self.components.len()
    }

    pub fn apply(&self, x: &[Q]) -> Result<Vec<Q>, PwlError> {
        let i = self
            .carrier
            .locate(x)
            .ok_or_else(|| PwlError::OutsideSupport(format!("{:?}", x)))?;
        Ok(self.components.iter().map(|f| f.pieces()[i].eval(x)).collect())
    }

    /// Same map on a triangulation refining the carrier.
    pub fn refine(&self, finer: &Complex) -> Result<ZMap, PwlError> {
        if finer == &self.carrier {
            return Ok(self.clone());
        }
        if !finer.refines(&self.carrier) {
            return Err(PwlError::NotLinear);
        }
        let components = self
            .components
            .iter()
            .map(|f| f.restrict_to(finer))
            .collect::<Result<_, _>>()?;
        Ok(ZMap {
            carrier: finer.clone(),
            components,
        })
    }
}

/// A triangulation on which every function of `fs` is linear.
pub fn linearizing_triangulation(fs: &[PwlFunction]) -> Result<Complex, PwlError> {
    join_all_carriers(fs)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ImageCell {
    pub source: Simplex,
    /// Images of the source vertices, in vertex order.
    pub points: Vec<Vec<Q>>,
    /// Dimension of the affine hull of the image.
    pub dim: isize,
}

impl ImageCell {
    pub fn is_degenerate(&self) -> bool {
        self.dim != self.source.dim() as isize
    }

    fn polytope(&self) -> Polytope {
        if self.is_degenerate() {
            Polytope::from_vertices(&self.points).expect("nonempty")
        } else {
            Polytope::from_simplex(&self.points).expect("independent")
        }
    }
}

#[derive(Clone, Debug)]
pub struct ImageComplex {
    pub cells: Vec<ImageCell>,
    pub is_triangulation: bool,
}

impl ImageComplex {
    /// The image simplexes; only meaningful when no image is degenerate.
    pub fn simplexes(&self) -> Vec<Simplex> {
        self.cells
            .iter()
            .filter(|c| !c.is_degenerate())
            .map(|c| Simplex::from_unchecked(c.points.iter().cloned().map(RationalPoint::from_vec).collect()))
            .collect()
    }
}

pub fn image_complex(g: &ZMap, delta: &Complex) -> Result<ImageComplex, PwlError> {
    let g = g.refine(delta)?;
    let cells: Vec<ImageCell> = delta
        .maximal()
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let points: Vec<Vec<Q>> = s
                .vertices()
                .iter()
                .map(|v| g.components.iter().map(|f| f.pieces()[i].eval(v.coords())).collect())
                .collect();
            let refs: Vec<&[Q]> = points.iter().map(|p| p.as_slice()).collect();
            let dim = linalg::affine_dim(&refs);
            ImageCell {
                source: s.clone(),
                points,
                dim,
            }
        })
        .collect();
    let is_triangulation = cells.iter().all(|c| !c.is_degenerate()) && overlap_defect(&cells).is_none();
    Ok(ImageComplex {
        cells,
        is_triangulation,
    })
}

/// First pair of non-degenerate image simplexes whose intersection is not
/// spanned by their common vertices, with an offending point of the
/// intersection.
pub(crate) fn overlap_defect(cells: &[ImageCell]) -> Option<(usize, usize, Vec<Q>)> {
    let polys: Vec<Option<(Polytope, (Vec<Q>, Vec<Q>))>> = cells
        .iter()
        .map(|c| {
            (!c.is_degenerate()).then(|| {
                let p = c.polytope();
                let b = p.bbox();
                (p, b)
            })
        })
        .collect();
    for i in 0..cells.len() {
        let Some((pi, bi)) = &polys[i] else { continue };
        for j in i + 1..cells.len() {
            let Some((pj, bj)) = &polys[j] else { continue };
            if !bboxes_overlap(bi, bj) {
                continue;
            }
            let Some(meet) = pi.intersect(pj) else { continue };
            let common: Vec<bool> = cells[i].points.iter().map(|p| cells[j].points.contains(p)).collect();
            let image_i = Simplex::from_unchecked(
                cells[i].points.iter().cloned().map(RationalPoint::from_vec).collect(),
            );
            for p in meet.vertices() {
                let lambda = image_i.barycentric(p).expect("inside the image simplex");
                // barycentric coordinates follow the sorted vertex order
                let ok = image_i.vertices().iter().zip(&lambda).all(|(v, l)| {
                    l.is_zero() || {
                        let k = cells[i].points.iter().position(|q| q.as_slice() == v.coords()).unwrap();
                        common[k]
                    }
                });
                if !ok {
                    return Some((i, j, p.clone()));
                }
            }
        }
    }
    None
}

/// Triangulation of `g([0,1]^n)`.
pub fn range_polyhedron(g: &ZMap) -> Complex {
    let ic = image_complex(g, g.carrier()).expect("carrier linearizes g");
    let k = g.k();
    if ic.is_triangulation {
        return Complex::from_simplexes(k, ic.simplexes());
    }
    let polys: Vec<Polytope> = ic.cells.iter().map(ImageCell::polytope).collect();
    arrangement_complex(k, &polys)
}

/// Triangulation of `f^{-1}(0)` for a nonnegative `f`: on each carrier
/// simplex the zero set is the face spanned by the vertices where `f`
/// vanishes.
pub fn zeroset(f: &PwlFunction) -> Complex {
    let mut out = Vec::new();
    for (s, l) in f.carrier().maximal().iter().zip(f.pieces()) {
        debug_assert!(s.vertices().iter().all(|v| !l.eval(v.coords()).is_negative()));
        let zs: Vec<RationalPoint> =
            s.vertices().iter().filter(|v| l.eval(v.coords()).is_zero()).cloned().collect();
        if !zs.is_empty() {
            out.push(Simplex::from_unchecked(zs));
        }
    }
    Complex::from_simplexes(f.ambient(), out)
}
