use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::rational::Q;

use super::lattice::{self, IntMatrix};
use super::linalg;
use super::polytope::Polytope;
use super::{GeometryError, RationalPoint};

/// A rational simplex, stored with its vertices in lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex {
    vertices: Vec<RationalPoint>,
}

impl Simplex {
    pub fn new(mut vertices: Vec<RationalPoint>) -> Result<Self, GeometryError> {
        let n = vertices.first().ok_or(GeometryError::Empty)?.dim();
        if let Some(v) = vertices.iter().find(|v| v.dim() != n) {
            return Err(GeometryError::DimensionMismatch {
                expected: n,
                found: v.dim(),
            });
        }
        vertices.sort();
        vertices.dedup();
        let s = Simplex { vertices };
        if !s.is_affinely_independent() {
            return Err(GeometryError::AffinelyDependent);
        }
        Ok(s)
    }

    pub(crate) fn from_unchecked(mut vertices: Vec<RationalPoint>) -> Self {
        vertices.sort();
        vertices.dedup();
        Simplex { vertices }
    }

    pub fn vertices(&self) -> &[RationalPoint] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn ambient(&self) -> usize {
        self.vertices[0].dim()
    }

    pub fn points(&self) -> Vec<Vec<Q>> {
        self.vertices.iter().map(|v| v.coords().to_vec()).collect()
    }

    fn is_affinely_independent(&self) -> bool {
        let pts: Vec<&[Q]> = self.vertices.iter().map(|v| v.coords()).collect();
        linalg::affine_dim(&pts) == self.vertices.len() as isize - 1
    }

    /// Rows are the homogeneous correspondents of the vertices.
    pub fn homogeneous_matrix(&self) -> IntMatrix {
        self.vertices.iter().map(|v| v.homogeneous()).collect()
    }

    /// Index of the lattice spanned by the homogeneous vertex vectors in its
    /// saturation; `|det|` for full-dimensional simplexes.
    pub fn lattice_index(&self) -> BigInt {
        lattice::lattice_index(&self.homogeneous_matrix()).expect("independent vertices")
    }

    pub fn is_regular(&self) -> bool {
        lattice::is_unimodular_system(&self.homogeneous_matrix())
    }

    /// Barycentric coordinates of `x`, or `None` when `x` is off the affine hull.
    pub fn barycentric(&self, x: &[Q]) -> Option<Vec<Q>> {
        let rows: Vec<Vec<Q>> = self
            .vertices
            .iter()
            .map(|v| {
                let mut r = v.coords().to_vec();
                r.push(Q::one());
                r
            })
            .collect();
        let mut b = x.to_vec();
        b.push(Q::one());
        linalg::solve_left(&rows, &b)
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        self.barycentric(x)
            .is_some_and(|l| l.iter().all(|c| !c.is_negative()))
    }

    /// Vertices carrying positive barycentric weight: the unique face having
    /// `x` in its relative interior.
    pub fn carrier_face(&self, x: &[Q]) -> Option<Vec<usize>> {
        let l = self.barycentric(x)?;
        if l.iter().any(|c| c.is_negative()) {
            return None;
        }
        Some((0..l.len()).filter(|&i| !l[i].is_zero()).collect())
    }

    pub fn face(&self, idx: &[usize]) -> Simplex {
        Simplex {
            vertices: idx.iter().map(|&i| self.vertices[i].clone()).collect(),
        }
    }

    /// All nonempty faces, including the simplex itself.
    pub fn faces(&self) -> Vec<Simplex> {
        let m = self.vertices.len();
        (1..1usize << m)
            .map(|mask| Simplex {
                vertices: (0..m)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| self.vertices[i].clone())
                    .collect(),
            })
            .collect()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.vertices.iter().all(|v| other.vertices.binary_search(v).is_ok())
    }

    pub fn barycenter(&self) -> RationalPoint {
        let m = Q::from_integer(BigInt::from(self.vertices.len()));
        let n = self.ambient();
        RationalPoint::from_vec(
            (0..n)
                .map(|k| self.vertices.iter().map(|v| &v.coords()[k]).sum::<Q>() / &m)
                .collect(),
        )
    }

    pub fn to_polytope(&self) -> Polytope {
        Polytope::from_simplex(&self.points()).expect("simplex vertices are independent")
    }

    pub(crate) fn bbox_contains(&self, x: &[Q]) -> bool {
        (0..x.len()).all(|k| {
            let mut it = self.vertices.iter().map(|v| &v.coords()[k]);
            let first = it.next().expect("nonempty");
            let (lo, hi) = it.fold((first, first), |(lo, hi), c| (lo.min(c), hi.max(c)));
            *lo <= x[k] && x[k] <= *hi
        })
    }

    pub fn bbox(&self) -> (Vec<Q>, Vec<Q>) {
        let n = self.ambient();
        let mut lo = self.vertices[0].coords().to_vec();
        let mut hi = lo.clone();
        for v in &self.vertices[1..] {
            for k in 0..n {
                let c = &v.coords()[k];
                if *c < lo[k] {
                    lo[k] = c.clone();
                }
                if *c > hi[k] {
                    hi[k] = c.clone();
                }
            }
        }
        (lo, hi)
    }

    /// Volume of the simplex spanned by `pts` relative to this one (both of
    /// the same dimension, `pts` inside the affine hull).
    pub(crate) fn relative_volume(&self, pts: &[Vec<Q>]) -> Q {
        let rows: Vec<Vec<Q>> = pts
            .iter()
            .map(|p| self.barycentric(p).expect("point in affine hull"))
            .collect();
        linalg::det(&rows).abs()
    }

    pub fn gcd_of_denominators(&self) -> BigInt {
        self.vertices
            .iter()
            .fold(BigInt::zero(), |acc, v| num_integer::Integer::gcd(&acc, &v.denominator()))
    }
}

pub fn is_regular_simplex(t: &Simplex) -> bool {
    t.is_regular()
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "conv{:?}", self.vertices)
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qr};

    pub(crate) fn pt(c: &[Q]) -> RationalPoint {
        RationalPoint::new(c.to_vec()).unwrap()
    }

    fn simplex(pts: &[&[Q]]) -> Simplex {
        Simplex::new(pts.iter().map(|p| pt(p)).collect()).unwrap()
    }

    #[test]
    fn regularity_examples() {
        assert!(simplex(&[&[qr(1, 3)], &[qr(1, 2)]]).is_regular());
        assert!(!simplex(&[&[qr(1, 3)], &[qr(2, 3)]]).is_regular());
        assert_eq!(simplex(&[&[qr(1, 3)], &[qr(2, 3)]]).lattice_index(), BigInt::from(3));
        assert!(simplex(&[&[q(0), q(0)]]).is_regular());
        assert!(is_regular_simplex(&simplex(&[&[q(0), q(0)], &[q(1), q(0)], &[q(1), q(1)]])));
        assert!(!simplex(&[&[q(0), q(0)], &[q(1), q(0)], &[qr(1, 2), q(1)]]).is_regular());
    }

    #[test]
    fn rejects_dependent_vertices() {
        let r = Simplex::new(vec![pt(&[q(0), q(0)]), pt(&[qr(1, 2), qr(1, 2)]), pt(&[q(1), q(1)])]);
        assert_eq!(r, Err(GeometryError::AffinelyDependent));
    }

    #[test]
    fn barycentric_and_carrier() {
        let t = simplex(&[&[q(0), q(0)], &[q(1), q(0)], &[qr(1, 2), q(1)]]);
        assert!(t.contains(&[qr(1, 2), qr(1, 2)]));
        assert!(!t.contains(&[q(0), q(1)]));
        assert_eq!(t.carrier_face(&[qr(1, 2), q(0)]), Some(vec![0, 2]));
        assert_eq!(t.faces().len(), 7);
    }

    proptest::proptest! {
        #[test]
        fn faces_of_regular_simplexes_are_regular(pick in 0usize..4, depth in 0usize..4) {
            // Farey-refine a regular triangle: replacing a vertex by the
            // mediant of an edge keeps the triangle regular
            let tris: [[[i64; 3]; 3]; 4] = [
                [[0, 0, 1], [1, 0, 1], [1, 1, 1]],
                [[0, 0, 1], [1, 1, 2], [1, 0, 1]],
                [[1, 1, 2], [2, 1, 2], [1, 1, 1]],
                [[0, 0, 1], [0, 1, 1], [1, 1, 1]],
            ];
            let mut h: Vec<Vec<i64>> = tris[pick].iter().map(|v| v.to_vec()).collect();
            for step in 0..depth {
                let (i, j) = (step % 3, (step + 1) % 3);
                h[i] = (0..3).map(|c| h[i][c] + h[j][c]).collect();
            }
            let t = Simplex::new(h.iter().map(|v| pt(&[qr(v[0], v[2]), qr(v[1], v[2])])).collect()).unwrap();
            proptest::prop_assert!(t.is_regular());
            for f in t.faces() {
                proptest::prop_assert!(f.is_regular());
            }
        }
    }
}
