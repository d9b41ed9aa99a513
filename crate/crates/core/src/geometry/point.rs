use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::rational::{in_unit_interval, qi, Q};

use super::GeometryError;

/// A rational point of the unit cube `[0,1]^n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint(Vec<Q>);

impl RationalPoint {
    pub fn new(coords: Vec<Q>) -> Result<Self, GeometryError> {
        if let Some(c) = coords.iter().find(|c| !in_unit_interval(c)) {
            return Err(GeometryError::OutsideCube(c.to_string()));
        }
        Ok(RationalPoint(coords))
    }

    /// For points produced by exact constructions that stay in the cube.
    pub(crate) fn from_vec(coords: Vec<Q>) -> Self {
        debug_assert!(coords.iter().all(in_unit_interval));
        RationalPoint(coords)
    }

    pub fn origin(n: usize) -> Self {
        RationalPoint(vec![Q::from_integer(0.into()); n])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Q] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Q> {
        self.0
    }

    /// Least common multiple of the reduced coordinate denominators.
    pub fn denominator(&self) -> BigInt {
        self.0
            .iter()
            .fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()))
    }

    /// The primitive integer vector `(d·x_1, …, d·x_n, d)` with `d = den(x)`.
    pub fn homogeneous(&self) -> Vec<BigInt> {
        let d = self.denominator();
        let dq = qi(&d);
        let mut v: Vec<BigInt> = self.0.iter().map(|c| (c * &dq).to_integer()).collect();
        v.push(d);
        v
    }

    /// Inverse of [`homogeneous`](Self::homogeneous) for a vector with
    /// positive last entry; the vector need not be primitive.
    pub fn from_homogeneous(v: &[BigInt]) -> Result<Self, GeometryError> {
        let (last, head) = v.split_last().ok_or(GeometryError::Empty)?;
        if last.sign() != num_bigint::Sign::Plus {
            return Err(GeometryError::OutsideCube("non-positive height".into()));
        }
        RationalPoint::new(head.iter().map(|x| Q::new(x.clone(), last.clone())).collect())
    }
}

pub fn denominator(x: &RationalPoint) -> BigInt {
    x.denominator()
}

pub fn homogeneous_correspondent(x: &RationalPoint) -> Vec<BigInt> {
    x.homogeneous()
}

impl fmt::Debug for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
