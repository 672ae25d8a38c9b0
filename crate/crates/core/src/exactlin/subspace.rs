use std::fmt;

use super::{Field, Matrix};
use crate::error::{Error, Result};

/// Subspace of `F^n`, stored as the RREF basis of its row space. Equality is
/// equality of RREF matrices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace<F> {
    ambient: usize,
    basis: Matrix<F>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    /// Row space of `m`.
    pub fn row_space(m: &Matrix<F>) -> Self {
        let (basis, pivots) = m.rref_pivots();
        Subspace { ambient: m.ncols(), basis, pivots }
    }

    pub fn from_rows(ambient: usize, rows: Vec<Vec<F>>) -> Result<Self> {
        Ok(Self::row_space(&Matrix::from_rows(ambient, rows)?))
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::zeros(0, ambient), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::identity(ambient), pivots: (0..ambient).collect() }
    }

    /// Span of the given standard basis vectors (0-based).
    pub fn coordinate(ambient: usize, idx: &[usize]) -> Self {
        let rows = idx
            .iter()
            .map(|&i| (0..ambient).map(|j| if i == j { F::one() } else { F::zero() }).collect())
            .collect();
        Self::from_rows(ambient, rows).expect("coordinate rows")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    fn check(&self, other: &Subspace<F>) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::ShapeMismatch(format!(
                "ambient dimensions {} and {} differ",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace<F>) -> Result<Self> {
        self.check(other)?;
        if other.is_zero() || self.is_full() {
            return Ok(self.clone());
        }
        if self.is_zero() || other.is_full() {
            return Ok(other.clone());
        }
        Ok(Self::row_space(&self.basis.vstack(&other.basis)))
    }

    /// `{x : <x, u> = 0 for all u}` under the dot product.
    pub fn annihilator(&self) -> Self {
        if self.is_zero() {
            return Self::full(self.ambient);
        }
        let n = self.basis.nullspace();
        Self::row_space(&n)
    }

    pub fn intersect(&self, other: &Subspace<F>) -> Result<Self> {
        self.check(other)?;
        if self.is_zero() || other.is_full() {
            return Ok(self.clone());
        }
        if other.is_zero() || self.is_full() {
            return Ok(other.clone());
        }
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }

    pub fn contains_vector(&self, v: &[F]) -> bool {
        assert_eq!(v.len(), self.ambient);
        // reduce against the RREF basis
        let mut r = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for (x, b) in r.iter_mut().zip(self.basis.row(i)) {
                if !b.is_zero() {
                    *x = x.sub(&f.mul(b));
                }
            }
        }
        r.iter().all(|x| x.is_zero())
    }

    pub fn contains(&self, other: &Subspace<F>) -> bool {
        other.ambient == self.ambient
            && other.dim() <= self.dim()
            && (0..other.dim()).all(|i| self.contains_vector(other.basis.row(i)))
    }

    /// Coordinates of `v` in the RREF basis. Assumes `v` lies in the subspace.
    pub fn coordinates(&self, v: &[F]) -> Vec<F> {
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    /// Image under the map `x -> x * f`.
    pub fn image(&self, f: &Matrix<F>) -> Self {
        assert_eq!(f.nrows(), self.ambient);
        Self::row_space(&self.basis.mul(f))
    }
}

impl<F: fmt::Debug> fmt::Debug for Subspace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{:?} in {}>", self.basis, self.ambient)
    }
}

#[cfg(test)]
mod tests {
    use super::super::Q;
    use super::*;

    fn span(n: usize, rows: &[Vec<i64>]) -> Subspace<Q> {
        Subspace::from_rows(n, rows.iter().map(|r| r.iter().map(|&x| Q::from_i64(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn sums() {
        let e1 = span(2, &[vec![1, 0]]);
        let e2 = span(2, &[vec![0, 1]]);
        assert!(e1.sum(&e2).unwrap().is_full());
        assert_eq!(e1.sum(&e1).unwrap(), e1);
        assert_eq!(e1.sum(&Subspace::zero(2)).unwrap(), e1);
    }

    #[test]
    fn intersections() {
        let u = span(3, &[vec![1, 0, 0], vec![0, 1, 0]]);
        let v = span(3, &[vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(u.intersect(&v).unwrap(), span(3, &[vec![0, 1, 0]]));
        assert_eq!(u.intersect(&u).unwrap(), u);
        let a = span(3, &[vec![1, 0, 0]]);
        let b = span(3, &[vec![0, 1, 0]]);
        assert!(a.intersect(&b).unwrap().is_zero());
        assert!(u.intersect(&span(2, &[vec![1, 0]])).is_err());
    }

    #[test]
    fn canonical_equality() {
        let a = span(3, &[vec![1, 1, 0], vec![0, 1, 1]]);
        let b = span(3, &[vec![1, 2, 1], vec![2, 1, -1]]);
        assert_eq!(a, b);
    }

    #[test]
    fn distributivity_fails_for_three_lines() {
        let x = span(2, &[vec![1, 0]]);
        let y = span(2, &[vec![0, 1]]);
        let z = span(2, &[vec![1, 1]]);
        let lhs = x.intersect(&y.sum(&z).unwrap()).unwrap();
        let rhs = x.intersect(&y).unwrap().sum(&x.intersect(&z).unwrap()).unwrap();
        assert_ne!(lhs, rhs);
    }
}
