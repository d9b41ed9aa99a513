use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::rational::{format_q, parse_q, Q};

use super::polytope::bboxes_overlap;
use super::{GeometryError, RationalPoint, Simplex};

/// A finite simplicial complex in `[0,1]^n`, stored as its maximal simplexes
/// in sorted order. Faces are implied.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Complex {
    ambient: usize,
    maximal: Vec<Simplex>,
}

impl Complex {
    /// Validates dimensions and the intersection property.
    pub fn new(ambient: usize, simplexes: Vec<Simplex>) -> Result<Self, GeometryError> {
        if let Some(s) = simplexes.iter().find(|s| s.ambient() != ambient) {
            return Err(GeometryError::DimensionMismatch {
                expected: ambient,
                found: s.ambient(),
            });
        }
        let c = Complex::from_simplexes(ambient, simplexes);
        c.check_intersections()?;
        Ok(c)
    }

    /// Keeps the inclusion-maximal simplexes; no geometric validation.
    pub fn from_simplexes(ambient: usize, simplexes: impl IntoIterator<Item = Simplex>) -> Self {
        let mut all: Vec<Simplex> = simplexes.into_iter().collect();
        all.sort_by(|a, b| b.dim().cmp(&a.dim()).then_with(|| a.cmp(b)));
        all.dedup();
        let mut seen: HashSet<Simplex> = HashSet::new();
        let mut maximal = Vec::new();
        for s in all {
            if seen.contains(&s) {
                continue;
            }
            for f in s.faces() {
                seen.insert(f);
            }
            maximal.push(s);
        }
        maximal.sort();
        Complex { ambient, maximal }
    }

    /// Caller guarantees that no simplex is a face of another.
    pub(crate) fn from_maximal(ambient: usize, mut maximal: Vec<Simplex>) -> Self {
        maximal.sort();
        maximal.dedup();
        Complex { ambient, maximal }
    }

    pub fn empty(ambient: usize) -> Self {
        Complex {
            ambient,
            maximal: vec![],
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn maximal(&self) -> &[Simplex] {
        &self.maximal
    }

    pub fn is_empty(&self) -> bool {
        self.maximal.is_empty()
    }

    pub fn max_dim(&self) -> Option<usize> {
        self.maximal.iter().map(Simplex::dim).max()
    }

    /// Vertices in lexicographic order.
    pub fn vertices(&self) -> Vec<RationalPoint> {
        let set: BTreeSet<&RationalPoint> = self.maximal.iter().flat_map(|s| s.vertices()).collect();
        set.into_iter().cloned().collect()
    }

    pub fn faces(&self) -> BTreeSet<Simplex> {
        self.maximal.iter().flat_map(|s| s.faces()).collect()
    }

    /// Index of the first maximal simplex containing `x`.
    pub fn locate(&self, x: &[Q]) -> Option<usize> {
        self.maximal.iter().position(|s| {
            let (lo, hi) = s.bbox();
            lo.iter().zip(&hi).zip(x).all(|((l, h), c)| l <= c && c <= h) && s.contains(x)
        })
    }

    pub fn contains_point(&self, x: &[Q]) -> bool {
        self.locate(x).is_some()
    }

    pub fn is_regular(&self) -> bool {
        self.maximal.iter().all(Simplex::is_regular)
    }

    /// Every pair of maximal simplexes meets in a common face.
    pub fn check_intersections(&self) -> Result<(), GeometryError> {
        let boxes: Vec<_> = self.maximal.iter().map(Simplex::bbox).collect();
        let polys: Vec<_> = self.maximal.iter().map(Simplex::to_polytope).collect();
        for i in 0..self.maximal.len() {
            for j in i + 1..self.maximal.len() {
                if !bboxes_overlap(&boxes[i], &boxes[j]) {
                    continue;
                }
                let (s, t) = (&self.maximal[i], &self.maximal[j]);
                let common: Vec<&RationalPoint> =
                    s.vertices().iter().filter(|v| t.vertices().contains(v)).collect();
                let ok = match polys[i].intersect(&polys[j]) {
                    None => common.is_empty(),
                    Some(p) => p
                        .vertices()
                        .iter()
                        .all(|v| common.iter().any(|c| c.coords() == v.as_slice())),
                };
                if !ok {
                    return Err(GeometryError::NotAComplex(format!(
                        "{:?} and {:?} do not meet in a common face",
                        s, t
                    )));
                }
            }
        }
        Ok(())
    }

    /// Every simplex of `self` lies inside some simplex of `other`.
    pub fn refines(&self, other: &Complex) -> bool {
        self.maximal.iter().all(|s| {
            let b = s.barycenter();
            other
                .maximal
                .iter()
                .any(|t| s.vertices().iter().all(|v| t.contains(v.coords())) && t.contains(b.coords()))
        })
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            dim: self.ambient,
            simplexes: self
                .maximal
                .iter()
                .map(|s| {
                    s.vertices()
                        .iter()
                        .map(|v| v.coords().iter().map(format_q).collect())
                        .collect()
                })
                .collect(),
        }
    }

    pub fn from_json(j: &ComplexJson) -> Result<Self, GeometryError> {
        let mut simplexes = Vec::new();
        for s in &j.simplexes {
            let mut vs = Vec::new();
            for v in s {
                if v.len() != j.dim {
                    return Err(GeometryError::DimensionMismatch {
                        expected: j.dim,
                        found: v.len(),
                    });
                }
                let coords = v
                    .iter()
                    .map(|c| parse_q(c).ok_or_else(|| GeometryError::Format(format!("bad rational '{}'", c))))
                    .collect::<Result<Vec<_>, _>>()?;
                vs.push(RationalPoint::new(coords)?);
            }
            simplexes.push(Simplex::new(vs)?);
        }
        Complex::new(j.dim, simplexes)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("serializable")
    }

    pub fn from_json_str(text: &str) -> Result<Self, GeometryError> {
        let j: ComplexJson =
            serde_json::from_str(text).map_err(|e| GeometryError::Format(e.to_string()))?;
        Complex::from_json(&j)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub dim: usize,
    pub simplexes: Vec<Vec<Vec<String>>>,
}

pub fn is_regular_complex(c: &Complex) -> bool {
    c.is_regular()
}

/// Connectivity of the vertex-edge graph.
pub fn is_connected(c: &Complex) -> Result<bool, GeometryError> {
    let vertices = c.vertices();
    if vertices.is_empty() {
        return Err(GeometryError::EmptyComplex);
    }
    let index: BTreeMap<&RationalPoint, usize> =
        vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut parent: Vec<usize> = (0..vertices.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for s in c.maximal() {
        let ids: Vec<usize> = s.vertices().iter().map(|v| index[v]).collect();
        for w in ids.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a] = b;
        }
    }
    let root = find(&mut parent, 0);
    Ok((0..vertices.len()).all(|i| find(&mut parent, i) == root))
}

/// Regular, and each maximal simplex has coprime vertex denominators.
pub fn is_strongly_regular(c: &Complex) -> Result<bool, GeometryError> {
    if !c.is_regular() {
        return Err(GeometryError::NotRegular);
    }
    Ok(c.maximal().iter().all(|s| s.gcd_of_denominators().is_one()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qr};

    fn pt(c: &[Q]) -> RationalPoint {
        RationalPoint::new(c.to_vec()).unwrap()
    }

    pub(crate) fn interval_complex(breaks: &[Q]) -> Complex {
        let s = breaks
            .windows(2)
            .map(|w| Simplex::new(vec![pt(&[w[0].clone()]), pt(&[w[1].clone()])]).unwrap())
            .collect();
        Complex::new(1, s).unwrap()
    }

    #[test]
    fn regular_complex_examples() {
        assert!(interval_complex(&[q(0), qr(1, 2), q(1)]).is_regular());
        assert!(!interval_complex(&[qr(1, 3), qr(2, 3)]).is_regular());
        let point = Complex::new(1, vec![Simplex::new(vec![pt(&[q(0)])]).unwrap()]).unwrap();
        assert!(is_regular_complex(&point));
    }

    #[test]
    fn connectivity_examples() {
        assert_eq!(is_connected(&interval_complex(&[q(0), q(1)])), Ok(true));
        let two_points = Complex::new(
            1,
            vec![Simplex::new(vec![pt(&[q(0)])]).unwrap(), Simplex::new(vec![pt(&[q(1)])]).unwrap()],
        )
        .unwrap();
        assert_eq!(is_connected(&two_points), Ok(false));
        let l_shape = Complex::new(
            2,
            vec![
                Simplex::new(vec![pt(&[q(0), q(1)]), pt(&[q(0), q(0)])]).unwrap(),
                Simplex::new(vec![pt(&[q(0), q(0)]), pt(&[q(1), q(0)])]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(is_connected(&l_shape), Ok(true));
        assert_eq!(is_connected(&Complex::empty(1)), Err(GeometryError::EmptyComplex));
    }

    #[test]
    fn strong_regularity_examples() {
        assert_eq!(is_strongly_regular(&interval_complex(&[qr(1, 3), qr(1, 2)])), Ok(true));
        let seg = Complex::new(
            2,
            vec![Simplex::new(vec![pt(&[q(0), qr(1, 2)]), pt(&[qr(1, 2), qr(1, 2)])]).unwrap()],
        )
        .unwrap();
        assert!(seg.is_regular());
        assert_eq!(is_strongly_regular(&seg), Ok(false));
        // denominators 2 and 6, but the segment is not regular
        let seg = Complex::new(
            2,
            vec![Simplex::new(vec![pt(&[q(0), qr(1, 2)]), pt(&[qr(1, 3), qr(1, 2)])]).unwrap()],
        )
        .unwrap();
        assert_eq!(is_strongly_regular(&seg), Err(GeometryError::NotRegular));
        assert_eq!(
            is_strongly_regular(&interval_complex(&[qr(1, 3), qr(2, 3)])),
            Err(GeometryError::NotRegular)
        );
    }

    #[test]
    fn faces_are_implied() {
        let c = Complex::from_simplexes(
            1,
            vec![
                Simplex::new(vec![pt(&[q(0)]), pt(&[q(1)])]).unwrap(),
                Simplex::new(vec![pt(&[q(1)])]).unwrap(),
            ],
        );
        assert_eq!(c.maximal().len(), 1);
        assert_eq!(c.faces().len(), 3);
    }

    #[test]
    fn overlapping_simplexes_rejected() {
        let r = Complex::new(
            1,
            vec![
                Simplex::new(vec![pt(&[q(0)]), pt(&[qr(2, 3)])]).unwrap(),
                Simplex::new(vec![pt(&[qr(1, 3)]), pt(&[q(1)])]).unwrap(),
            ],
        );
        assert!(matches!(r, Err(GeometryError::NotAComplex(_))));
    }

    #[test]
    fn json_round_trip() {
        let c = interval_complex(&[q(0), qr(1, 3), q(1)]);
        let text = c.to_json_string();
        assert!(text.contains("\"1/3\""));
        assert_eq!(Complex::from_json_str(&text).unwrap(), c);
        assert!(Complex::from_json_str("{\"dim\":1,\"simplexes\":[[[\"3/2\"]]]}").is_err());
    }
}
