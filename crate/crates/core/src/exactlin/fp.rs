use std::fmt;

use super::Field;
use crate::error::{Error, Result};

/// Element of the prime field F_P, stored as a residue in `0..P`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u8>(u8);

pub type F2 = Fp<2>;
pub type F3 = Fp<3>;
pub type F5 = Fp<5>;

impl<const P: u8> Fp<P> {
    pub fn new(x: i64) -> Self {
        Fp(x.rem_euclid(P as i64) as u8)
    }

    pub fn value(self) -> u8 {
        self.0
    }
}

impl<const P: u8> Field for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }

    fn one() -> Self {
        Fp(1)
    }

    fn is_zero(&self) -> bool {
        self.0 == 0
    }

    fn add(&self, other: &Self) -> Self {
        Fp(((self.0 as u16 + other.0 as u16) % P as u16) as u8)
    }

    fn sub(&self, other: &Self) -> Self {
        Fp(((self.0 as u16 + P as u16 - other.0 as u16) % P as u16) as u8)
    }

    fn mul(&self, other: &Self) -> Self {
        Fp(((self.0 as u16 * other.0 as u16) % P as u16) as u8)
    }

    fn neg(&self) -> Self {
        Fp((P - self.0) % P)
    }

    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero");
        // Fermat: x^(P-2)
        let mut r = Fp::<P>::one();
        for _ in 0..(P - 2) {
            r = r.mul(self);
        }
        r
    }

    fn from_i64(x: i64) -> Self {
        Fp::new(x)
    }

    fn tag() -> &'static str {
        match P {
            2 => "F2",
            3 => "F3",
            5 => "F5",
            _ => "Fp",
        }
    }

    fn parse_scalar(s: &str) -> Result<Self> {
        let x: i64 = s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad element of F{}: {:?}", P, s)))?;
        Ok(Fp::new(x))
    }

    fn characteristic() -> u64 {
        P as u64
    }

    fn elements() -> Option<Vec<Self>> {
        Some((0..P).map(Fp).collect())
    }
}

impl<const P: u8> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u8> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
