//! Exact rational scalars and the small amount of integer arithmetic the
//! geometry needs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number, always kept reduced with a positive denominator.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: &BigInt) -> Q {
    Q::from_integer(n.clone())
}

/// Parses `"p/q"` or `"k"` (optionally signed) into a reduced rational.
pub fn parse_q(text: &str) -> Option<Q> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Q::new(n, d))
        }
        None => text.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

/// Formats as `"p/q"`, or `"k"` for integers.
pub fn format_q(x: &Q) -> String {
    x.to_string()
}

pub fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    a.lcm(b)
}

pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

/// Fractional part in `[0, 1)`.
pub fn frac(x: &Q) -> Q {
    x - x.floor()
}

pub fn is_integer(x: &Q) -> bool {
    x.denom().is_one()
}

pub fn in_unit_interval(x: &Q) -> bool {
    !x.is_negative() && *x <= Q::one()
}

pub fn gcd_all<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    xs.into_iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
}

/// Scales a rational vector to the primitive integer vector with the same
/// direction (sign preserved). The zero vector maps to itself.
pub fn primitive_integer(v: &[Q]) -> Vec<BigInt> {
    let l = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * qi(&l)).to_integer()).collect();
    let g = gcd_all(ints.iter());
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}
