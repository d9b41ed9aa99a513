//! Convex rational polytopes kept in double description: a list of
//! halfspaces together with the vertices and, for each vertex, the set of
//! halfspaces tight at it. Clipping by a halfspace is the only primitive the
//! overlay and cutting code needs.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::rational::{primitive_integer, qi, Q};

use super::linalg::{self, dot};
use super::GeometryError;

/// `coeffs · x + constant >= 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Halfspace {
    pub coeffs: Vec<Q>,
    pub constant: Q,
}

impl Halfspace {
    pub fn new(coeffs: Vec<Q>, constant: Q) -> Self {
        Halfspace { coeffs, constant }
    }

    pub fn eval(&self, x: &[Q]) -> Q {
        dot(&self.coeffs, x) + &self.constant
    }

    pub fn negated(&self) -> Halfspace {
        Halfspace {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            constant: -self.constant.clone(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Scaled to a primitive integer vector; same halfspace, canonical form.
    pub fn normalized(&self) -> Vec<BigInt> {
        let mut v = self.coeffs.clone();
        v.push(self.constant.clone());
        primitive_integer(&v)
    }

    /// Canonical key of the underlying hyperplane (sign-insensitive).
    pub fn hyperplane_key(&self) -> Vec<BigInt> {
        let v = self.normalized();
        match v.iter().find(|x| !x.is_zero()) {
            Some(first) if first.is_negative() => v.into_iter().map(|x| -x).collect(),
            _ => v,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Polytope {
    ambient: usize,
    constraints: Vec<Halfspace>,
    vertices: Vec<Vec<Q>>,
    tight: Vec<Vec<usize>>,
}

fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

impl Polytope {
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn vertices(&self) -> &[Vec<Q>] {
        &self.vertices
    }

    pub fn constraints(&self) -> &[Halfspace] {
        &self.constraints
    }

    pub fn tight_sets(&self) -> &[Vec<usize>] {
        &self.tight
    }

    pub fn dim(&self) -> isize {
        let pts: Vec<&[Q]> = self.vertices.iter().map(|v| v.as_slice()).collect();
        linalg::affine_dim(&pts)
    }

    /// The unit cube `[0,1]^n`.
    pub fn cube(n: usize) -> Polytope {
        let mut constraints = Vec::new();
        for i in 0..n {
            let mut e = vec![Q::zero(); n];
            e[i] = Q::one();
            constraints.push(Halfspace::new(e.clone(), Q::zero()));
            constraints.push(Halfspace::new(e.iter().map(|c| -c).collect(), Q::one()));
        }
        let vertices: Vec<Vec<Q>> = (0..1usize << n)
            .map(|mask| {
                (0..n)
                    .map(|i| if mask >> i & 1 == 1 { Q::one() } else { Q::zero() })
                    .collect()
            })
            .collect();
        Polytope::from_parts(n, constraints, vertices)
    }

    /// Builds tight sets from constraints and a known vertex list, dropping
    /// constraints tight nowhere and duplicate constraints.
    fn from_parts(ambient: usize, constraints: Vec<Halfspace>, vertices: Vec<Vec<Q>>) -> Polytope {
        let mut seen = HashMap::new();
        let mut kept = Vec::new();
        for c in constraints {
            if c.is_trivial() {
                continue;
            }
            if !vertices.iter().any(|v| c.eval(v).is_zero()) {
                continue;
            }
            let key = c.normalized();
            if seen.insert(key, ()).is_none() {
                kept.push(c);
            }
        }
        let tight = vertices
            .iter()
            .map(|v| {
                kept.iter()
                    .enumerate()
                    .filter(|(_, c)| c.eval(v).is_zero())
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        Polytope {
            ambient,
            constraints: kept,
            vertices,
            tight,
        }
    }

    /// H-description of the simplex spanned by affinely independent points:
    /// equalities for the affine hull (as opposite halfspace pairs) and one
    /// facet halfspace per vertex (its barycentric coordinate).
    pub fn from_simplex(points: &[Vec<Q>]) -> Result<Polytope, GeometryError> {
        let (bary, eqs) = barycentric_system(points)?;
        let ambient = points[0].len();
        let mut constraints = Vec::new();
        for e in eqs {
            let h = Halfspace::new(e[..ambient].to_vec(), e[ambient].clone());
            constraints.push(h.negated());
            constraints.push(h);
        }
        if points.len() > 1 {
            for row in bary {
                constraints.push(Halfspace::new(row[..ambient].to_vec(), row[ambient].clone()));
            }
        }
        Ok(Polytope::from_parts(ambient, constraints, points.to_vec()))
    }

    /// Convex hull of a finite point set, by brute-force facet enumeration
    /// inside the affine hull. Intended for small cells.
    pub fn from_vertices(points: &[Vec<Q>]) -> Result<Polytope, GeometryError> {
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup();
        let first = pts.first().ok_or(GeometryError::Empty)?;
        let ambient = first.len();
        // affine basis
        let mut basis: Vec<Vec<Q>> = vec![first.clone()];
        for p in &pts[1..] {
            let mut cand = basis.clone();
            cand.push(p.clone());
            let refs: Vec<&[Q]> = cand.iter().map(|v| v.as_slice()).collect();
            if linalg::affine_dim(&refs) as usize == cand.len() - 1 {
                basis = cand;
            }
        }
        let d = basis.len() - 1;
        let (bary, eqs) = barycentric_system(&basis)?;
        let mut constraints = Vec::new();
        for e in eqs {
            let h = Halfspace::new(e[..ambient].to_vec(), e[ambient].clone());
            constraints.push(h.negated());
            constraints.push(h);
        }
        if d >= 1 {
            // μ(p) = bary · (p, 1)
            let mu: Vec<Vec<Q>> = pts
                .iter()
                .map(|p| {
                    let mut ph = p.clone();
                    ph.push(Q::one());
                    bary.iter().map(|row| dot(row, &ph)).collect()
                })
                .collect();
            let mut seen = std::collections::HashSet::new();
            for subset in combinations(pts.len(), d) {
                let rows: Vec<Vec<Q>> = subset.iter().map(|&i| mu[i].clone()).collect();
                let refs: Vec<&[Q]> = subset.iter().map(|&i| pts[i].as_slice()).collect();
                if linalg::affine_dim(&refs) != d as isize - 1 {
                    continue;
                }
                let ns = linalg::nullspace(&rows, d + 1);
                if ns.len() != 1 {
                    continue;
                }
                let phi = &ns[0];
                let vals: Vec<Q> = mu.iter().map(|m| dot(phi, m)).collect();
                let sign = if vals.iter().all(|v| !v.is_negative()) {
                    Q::one()
                } else if vals.iter().all(|v| !v.is_positive()) {
                    -Q::one()
                } else {
                    continue;
                };
                // h(x) = sign * φ · bary · (x, 1)
                let full: Vec<Q> = (0..=ambient)
                    .map(|c| {
                        let s: Q = (0..=d).map(|r| &phi[r] * &bary[r][c]).sum();
                        s * &sign
                    })
                    .collect();
                let h = Halfspace::new(full[..ambient].to_vec(), full[ambient].clone());
                if seen.insert(h.normalized()) {
                    constraints.push(h);
                }
            }
        }
        let poly = Polytope::from_parts(ambient, constraints, pts);
        // keep extreme points only
        let keep: Vec<usize> = (0..poly.vertices.len())
            .filter(|&i| poly.rank_of(&poly.tight[i]) == ambient)
            .collect();
        let vertices = keep.iter().map(|&i| poly.vertices[i].clone()).collect();
        Ok(Polytope::from_parts(ambient, poly.constraints, vertices))
    }

    fn rank_of(&self, idx: &[usize]) -> usize {
        let rows: Vec<Vec<Q>> = idx.iter().map(|&i| self.constraints[i].coeffs.clone()).collect();
        if rows.is_empty() {
            0
        } else {
            linalg::rank(&rows)
        }
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        self.constraints.iter().all(|c| !c.eval(x).is_negative())
    }

    /// Intersection with `h >= 0`; `None` when empty.
    pub fn clip(&self, h: &Halfspace) -> Option<Polytope> {
        let vals: Vec<Q> = self.vertices.iter().map(|v| h.eval(v)).collect();
        if vals.iter().all(|v| !v.is_negative()) {
            let mut constraints = self.constraints.clone();
            constraints.push(h.clone());
            return Some(Polytope::from_parts(self.ambient, constraints, self.vertices.clone()));
        }
        if vals.iter().all(|v| v.is_negative()) {
            return None;
        }
        let mut new_vertices: Vec<Vec<Q>> = Vec::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if !vals[i].is_negative() {
                new_vertices.push(v.clone());
            }
        }
        for i in 0..self.vertices.len() {
            if !vals[i].is_positive() {
                continue;
            }
            for j in 0..self.vertices.len() {
                if !vals[j].is_negative() {
                    continue;
                }
                let common = intersect_sorted(&self.tight[i], &self.tight[j]);
                if self.rank_of(&common) + 1 != self.ambient {
                    continue;
                }
                // edge test: no other vertex tight on all of `common`
                let t = &vals[i] / (&vals[i] - &vals[j]);
                let p: Vec<Q> = self.vertices[i]
                    .iter()
                    .zip(&self.vertices[j])
                    .map(|(a, b)| a + (b - a) * &t)
                    .collect();
                new_vertices.push(p);
            }
        }
        new_vertices.sort();
        new_vertices.dedup();
        let mut constraints = self.constraints.clone();
        constraints.push(h.clone());
        Some(Polytope::from_parts(self.ambient, constraints, new_vertices))
    }

    pub fn intersect(&self, other: &Polytope) -> Option<Polytope> {
        let mut cur = self.clone();
        for c in &other.constraints {
            cur = cur.clip(c)?;
        }
        Some(cur)
    }

    /// Splits along `h = 0` when the hyperplane meets the relative interior;
    /// otherwise the whole polytope lands on the side where `h` does not
    /// change sign. Returns `(h >= 0 part, h <= 0 part)`.
    pub fn split(&self, h: &Halfspace) -> (Option<Polytope>, Option<Polytope>) {
        let vals: Vec<Q> = self.vertices.iter().map(|v| h.eval(v)).collect();
        let pos = vals.iter().any(|v| v.is_positive());
        let neg = vals.iter().any(|v| v.is_negative());
        match (pos, neg) {
            (true, true) => (self.clip(h), self.clip(&h.negated())),
            (false, true) => (None, Some(self.clone())),
            _ => (Some(self.clone()), None),
        }
    }

    pub fn bbox(&self) -> (Vec<Q>, Vec<Q>) {
        let mut lo = self.vertices[0].clone();
        let mut hi = self.vertices[0].clone();
        for v in &self.vertices[1..] {
            for k in 0..self.ambient {
                if v[k] < lo[k] {
                    lo[k] = v[k].clone();
                }
                if v[k] > hi[k] {
                    hi[k] = v[k].clone();
                }
            }
        }
        (lo, hi)
    }

    /// Vertex indices of the smallest face containing the given vertices.
    pub fn face_closure(&self, vertex_ids: &[usize]) -> Vec<usize> {
        let Some((&first, rest)) = vertex_ids.split_first() else {
            return vec![];
        };
        let mut common = self.tight[first].clone();
        for &v in rest {
            common = intersect_sorted(&common, &self.tight[v]);
        }
        (0..self.vertices.len())
            .filter(|&v| common.iter().all(|c| self.tight[v].binary_search(c).is_ok()))
            .collect()
    }

    pub fn vertex_index(&self, p: &[Q]) -> Option<usize> {
        self.vertices.iter().position(|v| v.as_slice() == p)
    }

    pub fn barycenter(&self) -> Vec<Q> {
        let n = Q::from_integer(BigInt::from(self.vertices.len()));
        (0..self.ambient)
            .map(|k| self.vertices.iter().map(|v| &v[k]).sum::<Q>() / &n)
            .collect()
    }
}

pub fn bboxes_overlap(a: &(Vec<Q>, Vec<Q>), b: &(Vec<Q>, Vec<Q>)) -> bool {
    a.0.iter()
        .zip(&a.1)
        .zip(b.0.iter().zip(&b.1))
        .all(|((alo, ahi), (blo, bhi))| alo <= bhi && blo <= ahi)
}

/// For affinely independent points `v_0..v_m` in `Q^k`, returns
/// `(B, E)`: `B` is `(m+1) × (k+1)` with `B · (x, 1)` the barycentric
/// coordinates of `x` in the affine hull, and `E` spans the affine equations
/// `e · (x, 1) = 0` cutting out the hull.
pub(crate) fn barycentric_system(
    points: &[Vec<Q>],
) -> Result<(Vec<Vec<Q>>, Vec<Vec<Q>>), GeometryError> {
    let k = points.first().ok_or(GeometryError::Empty)?.len();
    let m1 = points.len();
    // A is (k+1) × (m+1), columns (v_j, 1)
    let a: Vec<Vec<Q>> = (0..=k)
        .map(|r| {
            (0..m1)
                .map(|j| if r < k { points[j][r].clone() } else { Q::one() })
                .collect()
        })
        .collect();
    let at: Vec<Vec<Q>> = (0..m1).map(|j| (0..=k).map(|r| a[r][j].clone()).collect()).collect();
    let ata: Vec<Vec<Q>> = (0..m1)
        .map(|i| (0..m1).map(|j| dot(&at[i], &at[j])).collect())
        .collect();
    let inv = linalg::inverse(&ata).ok_or(GeometryError::AffinelyDependent)?;
    let bary: Vec<Vec<Q>> = (0..m1)
        .map(|i| {
            (0..=k)
                .map(|c| (0..m1).map(|j| &inv[i][j] * &at[j][c]).sum())
                .collect()
        })
        .collect();
    let eqs = linalg::nullspace(&at, k + 1)
        .into_iter()
        .map(|e| {
            let ints = primitive_integer(&e);
            ints.iter().map(qi).collect()
        })
        .collect();
    Ok((bary, eqs))
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qr};

    fn pts(v: &[&[Q]]) -> Vec<Vec<Q>> {
        v.iter().map(|p| p.to_vec()).collect()
    }

    #[test]
    fn clip_square_by_diagonal() {
        let sq = Polytope::cube(2);
        let h = Halfspace::new(vec![q(1), q(-1)], q(0)); // x >= y
        let lower = sq.clip(&h).unwrap();
        let mut v = lower.vertices().to_vec();
        v.sort();
        assert_eq!(v, pts(&[&[q(0), q(0)], &[q(1), q(0)], &[q(1), q(1)]]));
        assert_eq!(lower.dim(), 2);
    }

    #[test]
    fn clip_cuts_new_vertices() {
        let sq = Polytope::cube(2);
        let h = Halfspace::new(vec![q(-2), q(-1)], q(1)); // 2x + y <= 1
        let p = sq.clip(&h).unwrap();
        let mut v = p.vertices().to_vec();
        v.sort();
        assert_eq!(v, pts(&[&[q(0), q(0)], &[q(0), q(1)], &[qr(1, 2), q(0)]]));
    }

    #[test]
    fn clip_to_lower_dimension() {
        let tri = Polytope::from_simplex(&pts(&[&[q(0), q(0)], &[q(1), q(0)], &[q(0), q(1)]])).unwrap();
        // y <= 0 leaves the bottom edge
        let e = tri.clip(&Halfspace::new(vec![q(0), q(-1)], q(0))).unwrap();
        assert_eq!(e.dim(), 1);
        assert_eq!(e.vertices().len(), 2);
        // further clip the segment at x <= 1/2
        let half = e.clip(&Halfspace::new(vec![q(-1), q(0)], qr(1, 2))).unwrap();
        let mut v = half.vertices().to_vec();
        v.sort();
        assert_eq!(v, pts(&[&[q(0), q(0)], &[qr(1, 2), q(0)]]));
    }

    #[test]
    fn segment_in_plane_has_equalities() {
        let seg = Polytope::from_simplex(&pts(&[&[q(0), q(1)], &[q(0), q(0)]])).unwrap();
        assert!(seg.contains(&[q(0), qr(1, 2)]));
        assert!(!seg.contains(&[qr(1, 3), qr(1, 2)]));
        assert_eq!(seg.dim(), 1);
    }

    #[test]
    fn hull_of_square_points() {
        let p = Polytope::from_vertices(&pts(&[
            &[q(0), q(0)],
            &[q(1), q(0)],
            &[q(1), q(1)],
            &[q(0), q(1)],
            &[qr(1, 2), qr(1, 2)],
        ]))
        .unwrap();
        assert_eq!(p.vertices().len(), 4);
        assert_eq!(p.constraints().len(), 4);
    }

    #[test]
    fn intersection_of_triangles() {
        let a = Polytope::from_simplex(&pts(&[&[q(0), q(0)], &[q(1), q(0)], &[q(1), q(1)]])).unwrap();
        let b = Polytope::from_simplex(&pts(&[&[q(0), q(0)], &[q(1), q(0)], &[q(0), q(1)]])).unwrap();
        let i = a.intersect(&b).unwrap();
        let mut v = i.vertices().to_vec();
        v.sort();
        assert_eq!(v, pts(&[&[q(0), q(0)], &[qr(1, 2), qr(1, 2)], &[q(1), q(0)]]));
    }
}
