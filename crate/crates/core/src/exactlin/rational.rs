use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::Field;
use crate::error::{Error, Result};

/// Exact rational number in lowest terms.
///
/// Values whose numerator and denominator fit in an `i64` are kept inline;
/// everything else falls back to a heap-allocated big rational. The
/// representation is canonical, so derived equality and hashing are exact.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Q {
    Small(i64, i64),
    Big(Box<BigRational>),
}

impl Q {
    pub fn new(num: i64, den: i64) -> Q {
        assert!(den != 0, "zero denominator");
        Q::from_i128(num as i128, den as i128)
    }

    fn from_i128(num: i128, den: i128) -> Q {
        let (mut n, mut d) = (num, den);
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = n.gcd(&d);
        if g > 1 {
            n /= g;
            d /= g;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(a), Ok(b)) if a != i64::MIN => Q::Small(a, b),
            _ => Q::Big(Box::new(BigRational::new_raw(BigInt::from(n), BigInt::from(d)))),
        }
    }

    pub fn from_big(r: BigRational) -> Q {
        // BigRational::new keeps lowest terms and a positive denominator
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(a), Some(b)) if a != i64::MIN => Q::Small(a, b),
            _ => Q::Big(Box::new(r)),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Q::Small(a, b) => BigRational::new_raw(BigInt::from(*a), BigInt::from(*b)),
            Q::Big(r) => (**r).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Q::Small(a, _) => BigInt::from(*a),
            Q::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Q::Small(_, b) => BigInt::from(*b),
            Q::Big(r) => r.denom().clone(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Q::Small(_, b) => *b == 1,
            Q::Big(r) => r.is_integer(),
        }
    }

    pub fn from_bigint(n: BigInt) -> Q {
        Q::from_big(BigRational::from_integer(n))
    }

    pub fn signum(&self) -> i32 {
        match self {
            Q::Small(a, _) => a.signum() as i32,
            Q::Big(r) => {
                if r.is_positive() {
                    1
                } else if r.is_negative() {
                    -1
                } else {
                    0
                }
            }
        }
    }

    fn big_op(&self, other: &Q, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> Q {
        Q::from_big(f(&self.to_big(), &other.to_big()))
    }
}

impl Field for Q {
    fn zero() -> Self {
        Q::Small(0, 1)
    }

    fn one() -> Self {
        Q::Small(1, 1)
    }

    fn is_zero(&self) -> bool {
        matches!(self, Q::Small(0, _))
    }

    fn is_one(&self) -> bool {
        matches!(self, Q::Small(1, 1))
    }

    fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (Q::Small(a, b), Q::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    if let Some(s) = a.checked_add(*c) {
                        if s != i64::MIN {
                            return Q::Small(s, 1);
                        }
                    }
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Q::from_i128(a * d + c * b, b * d)
            }
            _ => self.big_op(other, |x, y| x + y),
        }
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (Q::Small(a, b), Q::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    if let Some(s) = a.checked_mul(*c) {
                        if s != i64::MIN {
                            return Q::Small(s, 1);
                        }
                    }
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Q::from_i128(a * c, b * d)
            }
            _ => self.big_op(other, |x, y| x * y),
        }
    }

    fn neg(&self) -> Self {
        match self {
            // i64::MIN never occurs as a small numerator
            Q::Small(a, b) => Q::Small(-a, *b),
            Q::Big(r) => Q::from_big(-(**r).clone()),
        }
    }

    fn inv(&self) -> Self {
        match self {
            Q::Small(0, _) => panic!("inverse of zero"),
            Q::Small(a, b) => {
                if *a < 0 {
                    Q::Small(-b, -a)
                } else {
                    Q::Small(*b, *a)
                }
            }
            Q::Big(r) => Q::from_big(r.recip()),
        }
    }

    fn from_i64(x: i64) -> Self {
        Q::new(x, 1)
    }

    fn tag() -> &'static str {
        "Q"
    }

    fn parse_scalar(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad rational {:?}", s));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Q::from_big(BigRational::new(n, d)))
    }

    fn characteristic() -> u64 {
        0
    }

    fn elements() -> Option<Vec<Self>> {
        None
    }
}

impl Default for Q {
    fn default() -> Self {
        Q::zero()
    }
}

impl From<i64> for Q {
    fn from(x: i64) -> Self {
        Q::from_i64(x)
    }
}

impl PartialOrd for Q {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Q {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Q::Small(a, b), Q::Small(c, d)) => {
                ((*a as i128) * (*d as i128)).cmp(&((*c as i128) * (*b as i128)))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Q::Small(a, 1) => write!(f, "{}", a),
            Q::Small(a, b) => write!(f, "{}/{}", a, b),
            Q::Big(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Q::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms() {
        assert_eq!(Q::new(2, 4), Q::new(1, 2));
        assert_eq!(Q::new(3, -6), Q::new(-1, 2));
        assert_eq!(Q::new(0, -5), Q::zero());
        assert_eq!(Q::new(6, 3).to_string(), "2");
        assert_eq!(Q::new(-3, 2).to_string(), "-3/2");
    }

    #[test]
    fn overflow_promotes() {
        let big = Q::from_i64(i64::MAX);
        let sq = big.mul(&big);
        assert!(matches!(sq, Q::Big(_)));
        let back = sq.div(&big);
        assert_eq!(back, big);
        assert!(matches!(back, Q::Small(_, _)));
        let m = Q::from_i64(i64::MIN + 1).sub(&Q::one());
        assert!(matches!(m, Q::Big(_)));
        assert_eq!(m.add(&Q::one()), Q::from_i64(i64::MIN + 1));
    }

    #[test]
    fn parse_and_print() {
        for s in ["0", "1", "-7", "3/2", "-5/12", "123456789012345678901234567890"] {
            assert_eq!(Q::parse_scalar(s).unwrap().to_string(), s);
        }
        assert_eq!(Q::parse_scalar("4/6").unwrap().to_string(), "2/3");
        assert!(Q::parse_scalar("1/0").is_err());
        assert!(Q::parse_scalar("x").is_err());
    }

    #[test]
    fn ordering() {
        assert!(Q::new(1, 3) < Q::new(1, 2));
        assert!(Q::new(-1, 2) < Q::zero());
    }
}
