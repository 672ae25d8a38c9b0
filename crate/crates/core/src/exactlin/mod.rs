//! Exact scalars and canonical-form linear algebra.

mod fp;
mod matrix;
mod poly;
mod rational;
mod subspace;

use std::fmt::{Debug, Display};
use std::hash::Hash;

pub use fp::{Fp, F2, F3, F5};
pub use matrix::{solve, Matrix, Solution};
pub use poly::{min_poly, Poly};
pub use rational::Q;
pub use subspace::Subspace;

use crate::error::Result;

/// An exact field. Every computation is carried out over one fixed field.
#[allow(clippy::should_implement_trait)]
pub trait Field: Clone + PartialEq + Eq + Hash + Debug + Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;
    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }
    fn from_i64(x: i64) -> Self;
    /// Field tag used in serialized output: `Q`, `F2`, `F3`, `F5`.
    fn tag() -> &'static str;
    fn parse_scalar(s: &str) -> Result<Self>;
    /// Characteristic (0 for Q).
    fn characteristic() -> u64;
    /// All elements, for finite fields.
    fn elements() -> Option<Vec<Self>>;
}
