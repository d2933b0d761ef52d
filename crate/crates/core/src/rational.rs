//! Exact rationals and the extended value `+∞` used for orders and valuations.

use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, always kept in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Builds `n/d`.
///
/// # Panics
/// Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Builds the integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Builds the natural number `n` as a rational.
pub fn nat(n: u32) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `⌈q⌉` for nonnegative `q`, saturating at `u32::MAX`.
pub fn ceil_u32(q: &Rational) -> u32 {
    if q.is_negative() {
        return 0;
    }
    q.ceil().to_integer().to_u32().unwrap_or(u32::MAX)
}

/// `⌊q⌋` for nonnegative `q`, saturating at `u32::MAX`.
pub fn floor_u32(q: &Rational) -> u32 {
    if q.is_negative() {
        return 0;
    }
    q.floor().to_integer().to_u32().unwrap_or(u32::MAX)
}

/// Returns `Some(n)` when `q` is a natural number that fits in `u32`.
pub fn as_natural(q: &Rational) -> Option<u32> {
    if q.is_integer() && !q.is_negative() {
        q.to_integer().to_u32()
    } else {
        None
    }
}

/// Least common multiple of two positive integers.
pub fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    a.lcm(b)
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = den.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

/// A rational or `+∞`. Orders of zero ideals and valuations of zero are infinite.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Extended {
    Finite(Rational),
    Infinite,
}

impl Extended {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Extended::Infinite)
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Extended::Finite(q) => Some(q),
            Extended::Infinite => None,
        }
    }

    pub fn zero() -> Self {
        Extended::Finite(Rational::zero())
    }

    pub fn one() -> Self {
        Extended::Finite(Rational::one())
    }
}

impl From<Rational> for Extended {
    fn from(q: Rational) -> Self {
        Extended::Finite(q)
    }
}

impl PartialOrd for Extended {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Extended {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Extended::Finite(a), Extended::Finite(b)) => a.cmp(b),
            (Extended::Finite(_), Extended::Infinite) => Ordering::Less,
            (Extended::Infinite, Extended::Finite(_)) => Ordering::Greater,
            (Extended::Infinite, Extended::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(q) => write!(f, "{q}"),
            Extended::Infinite => f.write_str("inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("15/2"), Some(rat(15, 2)));
        assert_eq!(parse_rational(" -4 "), Some(int(-4)));
        assert_eq!(parse_rational("6/4"), Some(rat(3, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn rounding_helpers() {
        assert_eq!(ceil_u32(&rat(15, 2)), 8);
        assert_eq!(floor_u32(&rat(15, 2)), 7);
        assert_eq!(ceil_u32(&int(7)), 7);
        assert_eq!(as_natural(&int(3)), Some(3));
        assert_eq!(as_natural(&rat(1, 2)), None);
    }

    #[test]
    fn extended_order() {
        assert!(Extended::Finite(int(100)) < Extended::Infinite);
        assert!(Extended::zero() < Extended::one());
    }
}
