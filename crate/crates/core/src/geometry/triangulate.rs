//! Pulling triangulations of polytopes and the overlays built on them.

use std::collections::HashMap;

use num_traits::One;

use crate::rational::Q;

use super::linalg;
use super::polytope::{bboxes_overlap, Halfspace, Polytope};
use super::{Complex, GeometryError, RationalPoint, Simplex};

/// Triangulates a polytope without new vertices by pulling the
/// lexicographically least vertex of every face. Two polytopes sharing a face
/// induce the same triangulation on it.
pub fn pull_triangulate(p: &Polytope) -> Vec<Vec<Vec<Q>>> {
    let d = p.dim();
    if d < 0 {
        return vec![];
    }
    let all: Vec<usize> = (0..p.vertices().len()).collect();
    let mut out = Vec::new();
    pull_face(p, &all, d as usize, &mut out);
    out.into_iter()
        .map(|ids| ids.iter().map(|&i| p.vertices()[i].clone()).collect())
        .collect()
}

fn pull_face(p: &Polytope, face: &[usize], d: usize, out: &mut Vec<Vec<usize>>) {
    if face.len() == d + 1 {
        out.push(face.to_vec());
        return;
    }
    let verts = p.vertices();
    let apex = *face
        .iter()
        .min_by(|&&a, &&b| verts[a].cmp(&verts[b]))
        .expect("nonempty face");
    let mut facets: Vec<Vec<usize>> = Vec::new();
    for c in 0..p.constraints().len() {
        let g: Vec<usize> = face
            .iter()
            .copied()
            .filter(|&v| p.tight_sets()[v].binary_search(&c).is_ok())
            .collect();
        if g.len() == face.len() || g.len() < d || g.contains(&apex) || facets.contains(&g) {
            continue;
        }
        let pts: Vec<&[Q]> = g.iter().map(|&v| verts[v].as_slice()).collect();
        if linalg::affine_dim(&pts) != d as isize - 1 {
            continue;
        }
        facets.push(g);
    }
    for g in facets {
        let mut sub = Vec::new();
        pull_face(p, &g, d - 1, &mut sub);
        for mut s in sub {
            s.push(apex);
            out.push(s);
        }
    }
}

pub(crate) fn simplexes_of(polys: &[Polytope]) -> Vec<Simplex> {
    polys
        .iter()
        .flat_map(pull_triangulate)
        .map(|pts| Simplex::from_unchecked(pts.into_iter().map(RationalPoint::from_vec).collect()))
        .collect()
}

/// Pulling triangulation of a polyhedral complex given by its cells.
pub fn triangulate_cells(ambient: usize, cells: &[Vec<RationalPoint>]) -> Result<Complex, GeometryError> {
    let polys = cells
        .iter()
        .map(|c| {
            let pts: Vec<Vec<Q>> = c.iter().map(|v| v.coords().to_vec()).collect();
            if let Some(v) = c.iter().find(|v| v.dim() != ambient) {
                return Err(GeometryError::DimensionMismatch {
                    expected: ambient,
                    found: v.dim(),
                });
            }
            Polytope::from_vertices(&pts)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Complex::new(ambient, simplexes_of(&polys))
}

/// Nonempty pairwise intersections of maximal simplexes.
pub fn overlay_cells(a: &Complex, b: &Complex) -> Vec<(usize, usize, Polytope)> {
    let bp: Vec<_> = b.maximal().iter().map(|t| (t.bbox(), t.to_polytope())).collect();
    let mut out = Vec::new();
    for (i, s) in a.maximal().iter().enumerate() {
        let sb = s.bbox();
        let sp = s.to_polytope();
        for (j, (tb, tp)) in bp.iter().enumerate() {
            if !bboxes_overlap(&sb, tb) {
                continue;
            }
            if let Some(p) = sp.intersect(tp) {
                out.push((i, j, p));
            }
        }
    }
    out
}

/// Common refinement of two triangulations with the same support.
pub fn joint_subdivision(a: &Complex, b: &Complex) -> Result<Complex, GeometryError> {
    if a == b {
        return Ok(a.clone());
    }
    if !support_equal(a, b) {
        return Err(GeometryError::SupportMismatch);
    }
    Ok(joint_subdivision_unchecked(a, b))
}

pub(crate) fn joint_subdivision_unchecked(a: &Complex, b: &Complex) -> Complex {
    if a == b {
        return a.clone();
    }
    let cells: Vec<Polytope> = overlay_cells(a, b).into_iter().map(|(_, _, p)| p).collect();
    Complex::from_simplexes(a.ambient(), simplexes_of(&cells))
}

/// `|a| ⊆ |b|`, decided by exact relative volumes.
pub fn covers(a: &Complex, b: &Complex) -> bool {
    let bp: Vec<_> = b.maximal().iter().map(|t| (t.bbox(), t.to_polytope())).collect();
    a.maximal().iter().all(|s| {
        if s.dim() == 0 {
            return b.contains_point(s.vertices()[0].coords());
        }
        let sb = s.bbox();
        let sp = s.to_polytope();
        let mut pieces: Vec<Vec<Vec<Q>>> = Vec::new();
        for (tb, tp) in &bp {
            if !bboxes_overlap(&sb, tb) {
                continue;
            }
            if let Some(p) = sp.intersect(tp) {
                if p.dim() == s.dim() as isize {
                    let mut v = p.vertices().to_vec();
                    v.sort();
                    if !pieces.contains(&v) {
                        pieces.push(v);
                    }
                }
            }
        }
        let total: Q = pieces
            .iter()
            .map(|v| {
                let p = Polytope::from_vertices(v).expect("nonempty");
                pull_triangulate(&p)
                    .iter()
                    .map(|t| s.relative_volume(t))
                    .sum::<Q>()
            })
            .sum();
        total == Q::one()
    })
}

pub fn support_equal(a: &Complex, b: &Complex) -> bool {
    a == b || (covers(a, b) && covers(b, a))
}

/// Triangulates the union of possibly overlapping polytopes: each one is cut
/// by every facet and affine-hull hyperplane of the family, which makes the
/// pieces face-to-face, and the pieces are then pull-triangulated.
pub fn arrangement_complex(ambient: usize, polys: &[Polytope]) -> Complex {
    let mut planes: HashMap<_, Halfspace> = HashMap::new();
    let mut order = Vec::new();
    for p in polys {
        for c in p.constraints() {
            let key = c.hyperplane_key();
            if !planes.contains_key(&key) {
                order.push(key.clone());
                planes.insert(key, c.clone());
            }
        }
    }
    let mut cells = Vec::new();
    for p in polys {
        let mut cur = vec![p.clone()];
        for key in &order {
            let h = &planes[key];
            let mut next = Vec::with_capacity(cur.len());
            for c in cur {
                let (pos, neg) = c.split(h);
                next.extend(pos);
                next.extend(neg);
            }
            cur = next;
        }
        cells.extend(cur);
    }
    Complex::from_simplexes(ambient, simplexes_of(&cells))
}
