//! Weighted triangulations, their hats, and basic-set tests.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::linalg;
use crate::geometry::{Complex, ComplexJson, GeometryError, RationalPoint};
use crate::pwl::{lincomb, pwl_equal, PwlError, PwlFunction};
use crate::rational::{qi, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HatError {
    #[error("{0} weights for {1} vertices")]
    WeightCount(usize, usize),
    #[error("weight {weight} does not divide den({vertex}) = {den}")]
    BadWeight {
        vertex: String,
        weight: BigInt,
        den: BigInt,
    },
    #[error("weighted triangulation is not basic")]
    NotBasic,
    #[error("triangulation is not regular")]
    NotRegular,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Pwl(#[from] PwlError),
}

/// A triangulation with one positive weight per vertex, each dividing the
/// vertex denominator. Weights follow the lexicographic vertex order.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedTriangulation {
    complex: Complex,
    vertices: Vec<RationalPoint>,
    weights: Vec<BigInt>,
}

impl WeightedTriangulation {
    pub fn new(complex: Complex, weights: Vec<BigInt>) -> Result<Self, HatError> {
        let vertices = complex.vertices();
        if vertices.len() != weights.len() {
            return Err(HatError::WeightCount(weights.len(), vertices.len()));
        }
        for (v, a) in vertices.iter().zip(&weights) {
            let d = v.denominator();
            if *a <= BigInt::zero() || !(&d % a).is_zero() {
                return Err(HatError::BadWeight {
                    vertex: v.to_string(),
                    weight: a.clone(),
                    den: d,
                });
            }
        }
        Ok(WeightedTriangulation {
            complex,
            vertices,
            weights,
        })
    }

    pub fn unit(complex: Complex) -> Self {
        let weights = vec![BigInt::one(); complex.vertices().len()];
        WeightedTriangulation::new(complex, weights).expect("1 divides every denominator")
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn vertices(&self) -> &[RationalPoint] {
        &self.vertices
    }

    pub fn weights(&self) -> &[BigInt] {
        &self.weights
    }

    pub fn weight_of(&self, v: &RationalPoint) -> Option<&BigInt> {
        self.vertices.binary_search(v).ok().map(|i| &self.weights[i])
    }

    pub fn to_json(&self) -> WeightedJson {
        WeightedJson {
            complex: self.complex.to_json(),
            weights: self.weights.iter().map(|w| w.to_string()).collect(),
        }
    }

    pub fn from_json(j: &WeightedJson) -> Result<Self, HatError> {
        let complex = Complex::from_json(&j.complex)?;
        let weights = j
            .weights
            .iter()
            .map(|w| {
                w.parse::<BigInt>()
                    .map_err(|_| HatError::Geometry(GeometryError::Format(format!("bad weight '{}'", w))))
            })
            .collect::<Result<_, _>>()?;
        WeightedTriangulation::new(complex, weights)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightedJson {
    #[serde(flatten)]
    pub complex: ComplexJson,
    pub weights: Vec<String>,
}

/// One hat per vertex, in the vertex order of the source.
#[derive(Debug, Clone)]
pub struct HatSet {
    pub hats: Vec<PwlFunction>,
    pub source: WeightedTriangulation,
}

/// `h_i(v_i) = a_i / den(v_i)`, zero at the other vertices, linear on
/// every simplex.
pub fn hats_of(w: &WeightedTriangulation) -> HatSet {
    let hats = w
        .vertices
        .iter()
        .zip(&w.weights)
        .map(|(v, a)| {
            let peak = Q::new(a.clone(), v.denominator());
            PwlFunction::from_vertex_values(w.complex.clone(), |u| if u == v { peak.clone() } else { Q::zero() })
        })
        .collect();
    HatSet {
        hats,
        source: w.clone(),
    }
}

/// For every maximal simplex `T`, `M_T^{-1} D_T` is an integer matrix,
/// where `M_T` stacks the homogeneous vertex vectors and `D_T` holds the
/// weights. Lower-dimensional maximal simplexes are tested against the
/// saturation of their homogeneous row lattice.
pub fn is_basic(w: &WeightedTriangulation) -> bool {
    let n = w.complex.ambient();
    w.complex.maximal().iter().all(|t| {
        let weights: Vec<Q> = t.vertices().iter().map(|v| qi(w.weight_of(v).unwrap())).collect();
        if t.dim() != n {
            return lower_dim_basic(w, t);
        }
        let m: Vec<Vec<Q>> = t
            .homogeneous_matrix()
            .iter()
            .map(|r| r.iter().map(qi).collect())
            .collect();
        let inv = linalg::inverse(&m).expect("full-dimensional simplex");
        inv.iter()
            .all(|row| row.iter().zip(&weights).all(|(x, a)| (x * a).is_integer()))
    })
}

fn lower_dim_basic(w: &WeightedTriangulation, t: &crate::geometry::Simplex) -> bool {
    // each scaled barycentric functional must be integral on the saturated lattice
    let rows: Vec<Vec<BigInt>> = t.homogeneous_matrix();
    let s = crate::geometry::lattice::smith(&rows);
    let qm: Vec<Vec<Q>> = rows.iter().map(|r| r.iter().map(qi).collect()).collect();
    (0..rows.len()).all(|i| {
        let a = qi(w.weight_of(&t.vertices()[i]).unwrap());
        s.q_inv[..rows.len()].iter().all(|b| {
            let bq: Vec<Q> = b.iter().map(qi).collect();
            let coeffs = linalg::solve_left(&qm, &bq).expect("saturation lies in the span");
            (&coeffs[i] * &a).is_integer()
        })
    })
}

/// Hats of weight 1 on a regular triangulation.
pub fn schauder_hats(c: &Complex) -> Result<HatSet, HatError> {
    if !c.is_regular() {
        return Err(HatError::NotRegular);
    }
    Ok(hats_of(&WeightedTriangulation::unit(c.clone())))
}

/// `m_i = den(v_i) / a_i`.
pub fn multipliers(w: &WeightedTriangulation) -> Result<Vec<BigInt>, HatError> {
    if !is_basic(w) {
        return Err(HatError::NotBasic);
    }
    Ok(w.vertices.iter().zip(&w.weights).map(|(v, a)| v.denominator() / a).collect())
}

/// `Σ m_i h_i = 1` exactly.
pub fn verify_unit_partition(h: &HatSet) -> Result<bool, HatError> {
    let ms = multipliers(&h.source)?;
    if ms.len() != h.hats.len() {
        return Ok(false);
    }
    let ms: Vec<i64> = ms
        .iter()
        .map(|m| i64::try_from(m).expect("multiplier fits in i64"))
        .collect();
    let sum = lincomb(&h.hats, &ms)?;
    let one = PwlFunction::constant(h.source.complex.clone(), Q::one());
    Ok(pwl_equal(&sum, &one)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{desingularize, standard_cube_triangulation, Simplex};
    use crate::pwl::{eval_pwl, LinearForm};
    use crate::rational::{q, qr};

    fn pt(c: &[Q]) -> RationalPoint {
        RationalPoint::new(c.to_vec()).unwrap()
    }

    fn intervals(bs: &[Q]) -> Complex {
        Complex::new(
            1,
            bs.windows(2)
                .map(|w| Simplex::new(vec![pt(&[w[0].clone()]), pt(&[w[1].clone()])]).unwrap())
                .collect(),
        )
        .unwrap()
    }

    fn big(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn form(a: i64, b: i64) -> LinearForm {
        LinearForm::new(vec![q(a)], q(b))
    }

    fn farey_thirds() -> WeightedTriangulation {
        WeightedTriangulation::new(intervals(&[q(0), qr(1, 3), qr(2, 3), q(1)]), big(&[1, 3, 3, 1])).unwrap()
    }

    #[test]
    fn hats_on_two_intervals() {
        let w = WeightedTriangulation::unit(intervals(&[q(0), qr(1, 2), q(1)]));
        let h = hats_of(&w);
        assert_eq!(h.hats[0].pieces(), &[form(-2, 1), form(0, 0)]);
        assert_eq!(h.hats[1].pieces(), &[form(1, 0), form(-1, 1)]);
        assert_eq!(eval_pwl(&h.hats[1], &pt(&[qr(1, 2)])), Ok(qr(1, 2)));
        assert_eq!(h.hats[2].pieces(), &[form(0, 0), form(2, -1)]);
    }

    #[test]
    fn hats_of_thirds_match_the_tent_formulas() {
        // h at k/3 rises as 3x-(k-1) and falls as (k+1)-3x
        let h = hats_of(&farey_thirds());
        assert_eq!(h.hats[1].pieces(), &[form(3, 0), form(-3, 2), form(0, 0)]);
        assert_eq!(h.hats[2].pieces(), &[form(0, 0), form(3, -1), form(-3, 3)]);
        assert_eq!(eval_pwl(&h.hats[1], &pt(&[qr(1, 3)])), Ok(q(1)));
        assert_eq!(h.hats[0].pieces(), &[form(-3, 1), form(0, 0), form(0, 0)]);
        assert_eq!(h.hats[3].pieces(), &[form(0, 0), form(0, 0), form(3, -2)]);
    }

    #[test]
    fn unit_cube_hats_are_affine_coordinates() {
        let h = hats_of(&WeightedTriangulation::unit(standard_cube_triangulation(1)));
        assert_eq!(h.hats[0].pieces(), &[form(-1, 1)]);
        assert_eq!(h.hats[1].pieces(), &[form(1, 0)]);
    }

    #[test]
    fn basic_examples() {
        let regular = desingularize(&intervals(&[q(0), qr(2, 5), q(1)])).complex;
        let dens: Vec<BigInt> = regular.vertices().iter().map(|v| v.denominator()).collect();
        assert!(is_basic(&WeightedTriangulation::unit(regular.clone())));
        assert!(is_basic(&WeightedTriangulation::new(regular, dens).unwrap()));
        assert!(is_basic(&farey_thirds()));
        let unit = WeightedTriangulation::unit(intervals(&[q(0), qr(1, 3), qr(2, 3), q(1)]));
        assert!(!is_basic(&unit));
        assert_eq!(hats_of(&unit).hats[1].pieces()[1], LinearForm::new(vec![q(-1)], qr(2, 3)));
    }

    #[test]
    fn bad_weights_rejected() {
        let r = WeightedTriangulation::new(intervals(&[q(0), qr(1, 2), q(1)]), big(&[1, 3, 1]));
        assert!(matches!(r, Err(HatError::BadWeight { .. })));
        assert!(matches!(
            WeightedTriangulation::new(intervals(&[q(0), q(1)]), big(&[1])),
            Err(HatError::WeightCount(1, 2))
        ));
    }

    #[test]
    fn schauder_examples() {
        let h = schauder_hats(&standard_cube_triangulation(1)).unwrap();
        assert_eq!(h.hats[0].pieces(), &[form(-1, 1)]);
        assert_eq!(h.hats[1].pieces(), &[form(1, 0)]);
        assert!(matches!(
            schauder_hats(&intervals(&[q(0), qr(2, 3), q(1)])),
            Err(HatError::NotRegular)
        ));
        let c = crate::geometry::blow_up(&standard_cube_triangulation(1), &pt(&[qr(1, 2)])).unwrap();
        let h = schauder_hats(&c).unwrap();
        let sum = lincomb(&h.hats, &[1, 2, 1]).unwrap();
        assert_eq!(pwl_equal(&sum, &PwlFunction::constant(c, q(1))), Ok(true));
    }

    #[test]
    fn multiplier_examples() {
        let c = desingularize(&intervals(&[q(0), qr(1, 3), q(1)])).complex;
        let dens: Vec<BigInt> = c.vertices().iter().map(|v| v.denominator()).collect();
        assert_eq!(multipliers(&WeightedTriangulation::unit(c)).unwrap(), dens);
        assert_eq!(multipliers(&farey_thirds()).unwrap(), big(&[1, 1, 1, 1]));
        let w = WeightedTriangulation::new(intervals(&[q(0), qr(1, 2), q(1)]), big(&[1, 2, 1])).unwrap();
        assert_eq!(multipliers(&w).unwrap(), big(&[1, 1, 1]));
        let bad = WeightedTriangulation::unit(intervals(&[q(0), qr(1, 3), qr(2, 3), q(1)]));
        assert_eq!(multipliers(&bad), Err(HatError::NotBasic));
    }

    #[test]
    fn unit_partition_examples() {
        let c = desingularize(&standard_cube_triangulation(2)).complex;
        let c = crate::geometry::blow_up(&c, &pt(&[qr(1, 2), qr(1, 2)])).unwrap();
        assert_eq!(verify_unit_partition(&schauder_hats(&c).unwrap()), Ok(true));
        assert_eq!(verify_unit_partition(&hats_of(&farey_thirds())), Ok(true));
        let mut h = hats_of(&farey_thirds());
        h.hats.pop();
        assert_eq!(verify_unit_partition(&h), Ok(false));
    }

    proptest::proptest! {
        #[test]
        fn matrix_test_agrees_with_piece_integrality(
            cuts in proptest::collection::btree_set((1i64..12, 2i64..12), 1..4),
            weight_pick in proptest::collection::vec(0usize..4, 6),
        ) {
            let mut bs: Vec<Q> = cuts.iter().map(|&(a, b)| qr(a.min(b - 1), b)).collect();
            bs.push(q(0));
            bs.push(q(1));
            bs.sort();
            bs.dedup();
            let c = intervals(&bs);
            let weights: Vec<BigInt> = c.vertices().iter().enumerate().map(|(i, v)| {
                let d = v.denominator();
                let divisors: Vec<BigInt> = (1..=12i64).map(BigInt::from).filter(|k| (&d % k).is_zero()).collect();
                divisors[weight_pick[i % weight_pick.len()] % divisors.len()].clone()
            }).collect();
            let w = WeightedTriangulation::new(c, weights).unwrap();
            let integral = hats_of(&w).hats.iter().all(|h| h.is_integral());
            proptest::prop_assert_eq!(is_basic(&w), integral);
            if integral {
                proptest::prop_assert_eq!(verify_unit_partition(&hats_of(&w)), Ok(true));
            }
        }

        #[test]
        fn full_simplex_regular_iff_unit_hats_integral(a in 0i64..6, b in 1i64..6, c in 0i64..6, d in 1i64..6) {
            let p = pt(&[qr(a.min(b), b), q(0)]);
            let r = pt(&[q(1), qr(c.min(d), d)]);
            let o = pt(&[q(0), q(1)]);
            if let Ok(t) = Simplex::new(vec![p, r, o]) {
                let cx = Complex::new(2, vec![t.clone()]).unwrap();
                let h = hats_of(&WeightedTriangulation::unit(cx));
                proptest::prop_assert_eq!(t.is_regular(), h.hats.iter().all(|f| f.is_integral()));
            }
        }
    }
}
