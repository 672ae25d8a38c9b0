use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Field;
use crate::error::{Error, Result};

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from row vectors, each of length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<F>>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for r in rows {
            if r.len() != cols {
                return Err(Error::ShapeMismatch(format!(
                    "row of length {} in a matrix with {} columns",
                    r.len(),
                    cols
                )));
            }
            data.extend(r);
        }
        Ok(Matrix { rows: n, cols, data })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| r.iter().map(|&x| F::from_i64(x)).collect()).collect();
        Self::from_rows(cols, rows).expect("ragged integer rows")
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: F) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [F] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows_vec(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Matrix<F>) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out: Matrix<F> = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let brow = other.row(k);
                let orow = out.row_mut(i);
                for (o, b) in orow.iter_mut().zip(brow) {
                    if !b.is_zero() {
                        *o = o.add(&a.mul(b));
                    }
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.rows, "vector-matrix shape mismatch");
        let mut out = vec![F::zero(); self.cols];
        for (k, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (o, b) in out.iter_mut().zip(self.row(k)) {
                if !b.is_zero() {
                    *o = o.add(&a.mul(b));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix<F>) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix<F>) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &F) -> Self {
        let data = self.data.iter().map(|a| a.mul(c)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: &F, other: &Matrix<F>) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if c.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a = a.add(&c.mul(b));
            }
        }
    }

    pub fn trace(&self) -> F {
        assert!(self.is_square());
        (0..self.rows).fold(F::zero(), |acc, i| acc.add(self.get(i, i)))
    }

    pub fn vstack(&self, other: &Matrix<F>) -> Self {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Block-diagonal sum.
    pub fn block_diag(&self, other: &Matrix<F>) -> Self {
        let mut out = Matrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Matrix { rows: idx.len(), cols: self.cols, data }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        Matrix::from_fn(self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    /// Flattens row-major into a single vector.
    pub fn flatten(&self) -> Vec<F> {
        self.data.clone()
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<F>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, data }
    }

    /// Reduced row-echelon form with zero rows removed, and the pivot columns.
    pub fn rref_pivots(&self) -> (Matrix<F>, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inv();
            if !inv.is_one() {
                for j in c..m.cols {
                    let x = m.get(r, j).mul(&inv);
                    m.set(r, j, x);
                }
            }
            let prow: Vec<F> = m.row(r)[c..].to_vec();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                let row = &mut m.data[i * m.cols + c..(i + 1) * m.cols];
                for (x, y) in row.iter_mut().zip(&prow) {
                    if !y.is_zero() {
                        *x = x.sub(&f.mul(y));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.data.truncate(r * m.cols);
        m.rows = r;
        (m, pivots)
    }

    /// Reduced row-echelon form (zero rows removed) and rank.
    pub fn rref(&self) -> (Matrix<F>, usize) {
        let (m, p) = self.rref_pivots();
        (m, p.len())
    }

    pub fn rank(&self) -> usize {
        self.rref_pivots().1.len()
    }

    /// Basis (as RREF rows) of `{x : self * x^T = 0}`.
    pub fn nullspace(&self) -> Matrix<F> {
        let (r, pivots) = self.rref_pivots();
        nullspace_from_rref(&r, &pivots, self.cols)
    }

    pub fn inverse(&self) -> Option<Matrix<F>> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, F::one());
        }
        let (r, pivots) = aug.rref_pivots();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| r.get(i, n + j).clone()))
    }

    pub fn det(&self) -> F {
        assert!(self.is_square());
        let mut m = self.clone();
        let n = m.rows;
        let mut det = F::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return F::zero();
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = det.neg();
            }
            let piv = m.get(c, c).clone();
            det = det.mul(&piv);
            let inv = piv.inv();
            for i in (c + 1)..n {
                let f = m.get(i, c).mul(&inv);
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let x = m.get(i, j).sub(&f.mul(m.get(c, j)));
                    m.set(i, j, x);
                }
            }
        }
        det
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn pow(&self, mut e: u32) -> Matrix<F> {
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn is_nilpotent(&self) -> bool {
        self.pow(self.rows as u32).is_zero()
    }
}

fn nullspace_from_rref<F: Field>(r: &Matrix<F>, pivots: &[usize], cols: usize) -> Matrix<F> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..cols).filter(|&c| !is_pivot[c]).collect();
    let mut out = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![F::zero(); cols];
        v[f] = F::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = r.get(i, f).neg();
        }
        out.push(v);
    }
    let m = Matrix::from_rows(cols, out).expect("nullspace rows");
    m.rref().0
}

/// Outcome of [`solve`]: one particular solution and the full nullspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution<F> {
    pub particular: Vec<F>,
    pub nullspace: Matrix<F>,
}

/// Solves `a * x = b` for a column vector `x`. Returns `None` when the system
/// is inconsistent.
pub fn solve<F: Field>(a: &Matrix<F>, b: &[F]) -> Option<Solution<F>> {
    assert_eq!(a.nrows(), b.len(), "right-hand side length mismatch");
    let n = a.ncols();
    let aug = Matrix::from_fn(a.nrows(), n + 1, |i, j| {
        if j < n {
            a.get(i, j).clone()
        } else {
            b[i].clone()
        }
    });
    let (r, pivots) = aug.rref_pivots();
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![F::zero(); n];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = r.get(i, n).clone();
    }
    let coef = Matrix::from_fn(r.nrows(), n, |i, j| r.get(i, j).clone());
    Some(Solution { particular: x, nullspace: nullspace_from_rref(&coef, &pivots, n) })
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let r: Vec<String> = self.data[i * self.cols..(i + 1) * self.cols].iter().map(|x| format!("{:?}", x)).collect();
            write!(f, "{}", r.join(" "))?;
        }
        write!(f, "]")
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cols: Option<usize>,
    rows: Vec<Vec<String>>,
}

impl<F: Field> Serialize for Matrix<F> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let j = MatrixJson {
            field: F::tag().to_string(),
            cols: if self.rows == 0 { Some(self.cols) } else { None },
            rows: self.rows_vec().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect(),
        };
        j.serialize(s)
    }
}

impl<'de, F: Field> Deserialize<'de> for Matrix<F> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = MatrixJson::deserialize(d)?;
        if j.field != F::tag() {
            return Err(D::Error::custom(format!(
                "field mismatch: expected {}, found {}",
                F::tag(),
                j.field
            )));
        }
        let cols = j.cols.or_else(|| j.rows.first().map(|r| r.len())).unwrap_or(0);
        let rows = j
            .rows
            .iter()
            .map(|r| r.iter().map(|x| F::parse_scalar(x)).collect::<Result<Vec<F>>>())
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Matrix::from_rows(cols, rows).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::super::{Q, F2};
    use super::*;

    fn m(rows: &[Vec<i64>]) -> Matrix<Q> {
        Matrix::from_i64_rows(rows)
    }

    #[test]
    fn rref_examples() {
        let id = Matrix::<Q>::identity(2);
        assert_eq!(id.rref(), (id.clone(), 2));
        let (r, k) = m(&[vec![1, 1], vec![2, 2]]).rref();
        assert_eq!(k, 1);
        assert_eq!(r, m(&[vec![1, 1]]));
        let (r, k) = Matrix::<Q>::zeros(3, 2).rref();
        assert_eq!(k, 0);
        assert_eq!(r.nrows(), 0);
    }

    #[test]
    fn solve_examples() {
        let a = Matrix::<Q>::identity(3);
        let b = vec![Q::new(1, 2), Q::from_i64(3), Q::from_i64(-1)];
        let s = solve(&a, &b).unwrap();
        assert_eq!(s.particular, b);
        assert_eq!(s.nullspace.nrows(), 0);

        let z = Matrix::<Q>::zeros(2, 3);
        let s = solve(&z, &[Q::zero(), Q::zero()]).unwrap();
        assert_eq!(s.particular, vec![Q::zero(); 3]);
        assert_eq!(s.nullspace, Matrix::identity(3));

        assert!(solve(&z, &[Q::one(), Q::zero()]).is_none());
    }

    #[test]
    fn inverse_and_det() {
        let a = m(&[vec![2, 1], vec![7, 4]]);
        assert_eq!(a.det(), Q::one());
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(m(&[vec![1, 2], vec![2, 4]]).inverse().is_none());
        let b = Matrix::<F2>::from_i64_rows(&[vec![1, 1], vec![1, 0]]);
        assert!(b.mul(&b.inverse().unwrap()).is_identity());
    }

    #[test]
    fn nullspace_is_annihilated() {
        let a = m(&[vec![1, 2, 3, 4], vec![2, 4, 6, 9]]);
        let n = a.nullspace();
        assert_eq!(n.nrows(), 2);
        assert!(a.mul(&n.transpose()).is_zero());
    }

    #[test]
    fn json_round_trip() {
        let a = Matrix::from_rows(2, vec![vec![Q::one(), Q::new(3, 2)]]).unwrap();
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"field":"Q","rows":[["1","3/2"]]}"#);
        let b: Matrix<Q> = serde_json::from_str(&s).unwrap();
        assert_eq!(a, b);
        assert!(serde_json::from_str::<Matrix<F2>>(&s).is_err());
    }
}
