//! Stellar subdivision, desingularization and the base cube triangulation.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cancel::{CancelToken, Cancelled};
use crate::rational::Q;

use super::lattice::parallelepiped_points;
use super::{Complex, GeometryError, RationalPoint, Simplex};

/// Star subdivision at `center`. Every simplex containing the minimal face
/// `S` with `center` in its relative interior is replaced by the cones from
/// `center` over its faces missing one vertex of `S`.
pub fn blow_up(c: &Complex, center: &RationalPoint) -> Result<Complex, GeometryError> {
    let x = center.coords();
    let face = c
        .maximal()
        .iter()
        .filter(|s| s.bbox_contains(x))
        .find_map(|s| s.carrier_face(x).map(|idx| s.face(&idx)))
        .ok_or_else(|| GeometryError::OutsideSupport(center.to_string()))?;
    if face.dim() == 0 {
        return Err(GeometryError::CenterIsVertex(center.to_string()));
    }
    let mut out = Vec::with_capacity(c.maximal().len() + 4);
    for t in c.maximal() {
        if !face.is_face_of(t) {
            out.push(t.clone());
            continue;
        }
        for s in face.vertices() {
            let mut vs: Vec<RationalPoint> = t.vertices().iter().filter(|v| *v != s).cloned().collect();
            vs.push(center.clone());
            out.push(Simplex::from_unchecked(vs));
        }
    }
    // cones over maximal simplexes stay maximal
    Ok(Complex::from_maximal(c.ambient(), out))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Desingularization {
    pub complex: Complex,
    /// Blow-up centers in the order applied.
    pub centers: Vec<RationalPoint>,
}

impl Desingularization {
    pub fn replay(input: &Complex, centers: &[RationalPoint]) -> Result<Complex, GeometryError> {
        centers.iter().try_fold(input.clone(), |c, x| blow_up(&c, x))
    }
}

pub fn desingularize(c: &Complex) -> Desingularization {
    desingularize_with(c, &CancelToken::new()).expect("no cancellation requested")
}

/// Repeatedly blows up the first non-regular maximal simplex at a nonzero
/// lattice point of its half-open fundamental parallelepiped.
pub fn desingularize_with(c: &Complex, token: &CancelToken) -> Result<Desingularization, Cancelled> {
    let mut cur = c.clone();
    let mut centers = Vec::new();
    let mut known_regular: HashSet<Simplex> = HashSet::new();
    loop {
        token.check()?;
        let mut bad = None;
        for s in cur.maximal() {
            if known_regular.contains(s) {
                continue;
            }
            if s.is_regular() {
                known_regular.insert(s.clone());
            } else {
                bad = Some(s.clone());
                break;
            }
        }
        let Some(t) = bad else { break };
        let center = blow_up_center(&t);
        cur = blow_up(&cur, &center).expect("center lies in a non-regular simplex");
        centers.push(center);
    }
    Ok(Desingularization {
        complex: cur,
        centers,
    })
}

/// Parallelepiped point with the least coefficient sum, then least `ξ`.
pub(crate) fn blow_up_center(t: &Simplex) -> RationalPoint {
    let best = parallelepiped_points(&t.homogeneous_matrix())
        .into_iter()
        .map(|p| (p.lambda.iter().sum::<Q>(), p.xi))
        .min()
        .expect("non-regular simplex has a parallelepiped point");
    RationalPoint::from_homogeneous(&best.1).expect("convex combination of cube points")
}

/// Lattice indexes of the maximal simplexes, largest first. Every blow-up
/// made by [`desingularize`] strictly decreases this sequence in the
/// lexicographic order (a multiset ordering, hence well-founded).
pub fn determinant_profile(c: &Complex) -> Vec<BigInt> {
    let mut v: Vec<BigInt> = c.maximal().iter().map(Simplex::lattice_index).collect();
    v.sort_by(|a, b| b.cmp(a));
    v
}

/// Kuhn triangulation of `[0,1]^n`: one simplex per ordering of the
/// coordinates.
pub fn standard_cube_triangulation(n: usize) -> Complex {
    let mut simplexes = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 0, &mut |p| {
        let mut cur = vec![Q::zero(); n];
        let mut vs = vec![RationalPoint::from_vec(cur.clone())];
        for &i in p {
            cur[i] = Q::one();
            vs.push(RationalPoint::from_vec(cur.clone()));
        }
        simplexes.push(Simplex::from_unchecked(vs));
    });
    Complex::from_simplexes(n, simplexes)
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::support_equal;
    use crate::rational::{q, qr};

    fn pt(c: &[Q]) -> RationalPoint {
        RationalPoint::new(c.to_vec()).unwrap()
    }

    fn intervals(breaks: &[Q]) -> Complex {
        let s = breaks
            .windows(2)
            .map(|w| Simplex::new(vec![pt(&[w[0].clone()]), pt(&[w[1].clone()])]).unwrap())
            .collect();
        Complex::new(1, s).unwrap()
    }

    fn tri(a: [Q; 2], b: [Q; 2], c: [Q; 2]) -> Simplex {
        Simplex::new(vec![pt(&a), pt(&b), pt(&c)]).unwrap()
    }

    #[test]
    fn blow_up_examples() {
        let c = intervals(&[qr(1, 3), qr(2, 3)]);
        let b = blow_up(&c, &pt(&[qr(1, 2)])).unwrap();
        assert_eq!(b, intervals(&[qr(1, 3), qr(1, 2), qr(2, 3)]));
        assert!(matches!(blow_up(&c, &pt(&[qr(1, 3)])), Err(GeometryError::CenterIsVertex(_))));
        assert!(matches!(blow_up(&c, &pt(&[q(1)])), Err(GeometryError::OutsideSupport(_))));

        let t = Complex::new(2, vec![tri([q(0), q(0)], [q(1), q(0)], [qr(1, 2), q(1)])]).unwrap();
        let b = blow_up(&t, &pt(&[qr(1, 2), qr(1, 2)])).unwrap();
        assert_eq!(b.maximal().len(), 3);
        for s in b.maximal() {
            assert!(s.vertices().contains(&pt(&[qr(1, 2), qr(1, 2)])));
        }
        assert!(support_equal(&t, &b));
        assert!(b.check_intersections().is_ok());
    }

    #[test]
    fn blow_up_on_an_edge_splits_both_neighbours() {
        let sq = standard_cube_triangulation(2);
        let b = blow_up(&sq, &pt(&[qr(1, 2), qr(1, 2)])).unwrap();
        assert_eq!(b.maximal().len(), 4);
        assert!(b.check_intersections().is_ok());
    }

    #[test]
    fn desingularize_examples() {
        let r = intervals(&[q(0), qr(1, 2), q(1)]);
        let d = desingularize(&r);
        assert_eq!(d.complex, r);
        assert!(d.centers.is_empty());

        let c = intervals(&[q(0), qr(1, 3), qr(2, 3), q(1)]);
        let d = desingularize(&c);
        assert_eq!(d.centers, vec![pt(&[qr(1, 2)])]);
        assert_eq!(d.complex, intervals(&[q(0), qr(1, 3), qr(1, 2), qr(2, 3), q(1)]));
        assert!(d.complex.is_regular());

        let t = Complex::new(2, vec![tri([q(0), q(0)], [q(1), q(0)], [qr(1, 2), q(1)])]).unwrap();
        let d = desingularize(&t);
        assert_eq!(d.centers, vec![pt(&[qr(1, 2), qr(1, 2)])]);
        assert_eq!(d.complex.maximal().len(), 3);
        assert!(d.complex.is_regular());
        assert_eq!(Desingularization::replay(&t, &d.centers).unwrap(), d.complex);
    }

    #[test]
    fn cube_triangulations() {
        assert_eq!(standard_cube_triangulation(1), intervals(&[q(0), q(1)]));
        let c2 = standard_cube_triangulation(2);
        assert_eq!(c2.maximal().len(), 2);
        assert!(c2.is_regular());
        assert!(c2.vertices().iter().all(|v| v.denominator() == BigInt::one()));
        let c3 = standard_cube_triangulation(3);
        assert_eq!(c3.maximal().len(), 6);
        assert!(c3.is_regular());
        assert!(c3.check_intersections().is_ok());
    }

    #[test]
    fn cancellation_is_polled() {
        let c = intervals(&[q(0), qr(1, 7), q(1)]);
        let token = CancelToken::new();
        token.cancel();
        assert_eq!(desingularize_with(&c, &token), Err(Cancelled));
    }
}
