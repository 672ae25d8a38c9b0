//! Flags, multiple flag objects, the standard symplectic form and duality.
//!
//! Vectors are rows and linear maps act on the right: a matrix `g` sends
//! `v` to `v * g`.

use rand::Rng;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::compositions::{Composition, DimVector};
use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix, Subspace};

/// A chain `0 = A_0 ⊆ A_1 ⊆ ... ⊆ A_p = V`. Repeated members (zero parts of the
/// composition) are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Flag<F> {
    chain: Vec<Subspace<F>>,
}

impl<F: Field> Flag<F> {
    /// Builds a flag from its proper members `A_1, ..., A_{p-1}`.
    pub fn new(ambient: usize, members: Vec<Subspace<F>>) -> Result<Self> {
        let mut chain = Vec::with_capacity(members.len() + 2);
        chain.push(Subspace::zero(ambient));
        chain.extend(members);
        chain.push(Subspace::full(ambient));
        Self::from_chain(chain)
    }

    /// Builds a flag from the full chain including `0` and `V`.
    pub fn from_chain(chain: Vec<Subspace<F>>) -> Result<Self> {
        if chain.len() < 2 {
            return Err(Error::InvalidFlag("a flag needs at least 0 and V".into()));
        }
        let n = chain[0].ambient_dim();
        if !chain[0].is_zero() || !chain.last().unwrap().is_full() {
            return Err(Error::InvalidFlag("chain must start at 0 and end at V".into()));
        }
        for w in chain.windows(2) {
            if w[1].ambient_dim() != n || !w[1].contains(&w[0]) {
                return Err(Error::InvalidFlag("members do not form a chain".into()));
            }
        }
        Ok(Flag { chain })
    }

    /// The flag `0 ⊆ V`.
    pub fn trivial(ambient: usize) -> Self {
        Flag { chain: vec![Subspace::zero(ambient), Subspace::full(ambient)] }
    }

    pub fn ambient_dim(&self) -> usize {
        self.chain[0].ambient_dim()
    }

    /// Number of steps `p`.
    pub fn len(&self) -> usize {
        self.chain.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `A_i` for `0 <= i <= p`.
    pub fn member(&self, i: usize) -> &Subspace<F> {
        &self.chain[i]
    }

    pub fn chain(&self) -> &[Subspace<F>] {
        &self.chain
    }

    pub fn proper_members(&self) -> &[Subspace<F>] {
        &self.chain[1..self.chain.len() - 1]
    }

    pub fn composition(&self) -> Composition {
        let parts = self.chain.windows(2).map(|w| (w[1].dim() - w[0].dim()) as u32).collect();
        Composition::new(parts).expect("flag has at least one step")
    }

    /// Re-indexes the chain to the composition `target`: the member at step
    /// `i` is the chain member whose dimension is the `i`-th partial sum.
    pub fn reshape(&self, target: &Composition) -> Result<Self> {
        let sums = target.partial_sums();
        let mut chain = Vec::with_capacity(sums.len());
        for s in sums {
            let m = self
                .chain
                .iter()
                .find(|a| a.dim() == s as usize)
                .ok_or_else(|| {
                    Error::ShapeMismatch(format!(
                        "flag of type {} has no member of dimension {} needed for {}",
                        self.composition(),
                        s,
                        target
                    ))
                })?;
            chain.push(m.clone());
        }
        Flag::from_chain(chain)
    }

    fn map_members(&self, f: impl Fn(&Subspace<F>) -> Subspace<F>) -> Self {
        Flag { chain: self.chain.iter().map(f).collect() }
    }
}

/// Upper bound on the ambient dimension accepted from external input.
pub const MAX_AMBIENT: usize = 64;

/// A vector space with an ordered tuple of flags: one object of the category
/// of multiple flags.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FlagObject<F> {
    ambient: usize,
    flags: Vec<Flag<F>>,
}

impl<F: Field> FlagObject<F> {
    pub fn new(ambient: usize, flags: Vec<Flag<F>>) -> Result<Self> {
        if ambient == 0 {
            return Err(Error::ZeroDimensional);
        }
        if flags.is_empty() {
            return Err(Error::InvalidFlag("an object needs at least one flag".into()));
        }
        if flags.iter().any(|f| f.ambient_dim() != ambient) {
            return Err(Error::ShapeMismatch("flags live in different ambient spaces".into()));
        }
        Ok(FlagObject { ambient, flags })
    }

    /// Builds an object from lists of proper members, each a list of integer rows.
    pub fn from_int_members(ambient: usize, flags: &[Vec<Vec<Vec<i64>>>]) -> Result<Self> {
        let flags = flags
            .iter()
            .map(|members| {
                let ms = members
                    .iter()
                    .map(|rows| {
                        Subspace::from_rows(
                            ambient,
                            rows.iter().map(|r| r.iter().map(|&x| F::from_i64(x)).collect()).collect(),
                        )
                    })
                    .collect::<Result<Vec<_>>>()?;
                Flag::new(ambient, ms)
            })
            .collect::<Result<Vec<_>>>()?;
        FlagObject::new(ambient, flags)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn flags(&self) -> &[Flag<F>] {
        &self.flags
    }

    pub fn k(&self) -> usize {
        self.flags.len()
    }

    pub fn dim_vector(&self) -> DimVector {
        DimVector::new(self.flags.iter().map(|f| f.composition()).collect())
            .expect("all flags share the ambient dimension")
    }

    /// Applies the invertible map `v -> v * g` to every member.
    pub fn transform(&self, g: &Matrix<F>) -> Self {
        assert_eq!(g.nrows(), self.ambient);
        assert_eq!(g.ncols(), self.ambient);
        FlagObject {
            ambient: self.ambient,
            flags: self.flags.iter().map(|f| f.map_members(|a| a.image(g))).collect(),
        }
    }

    /// Reorders coordinates: new coordinate `j` is old coordinate `perm[j]`.
    pub fn permute_coordinates(&self, perm: &[usize]) -> Self {
        self.transform(&permutation_matrix(perm))
    }

    /// Reorders flags: `result.flags[i] = self.flags[perm[i]]`.
    pub fn permute_flags(&self, perm: &[usize]) -> Self {
        FlagObject { ambient: self.ambient, flags: perm.iter().map(|&i| self.flags[i].clone()).collect() }
    }

    /// Re-indexes every flag to the corresponding component of `target`.
    pub fn reshape(&self, target: &DimVector) -> Result<Self> {
        if target.k() != self.k() {
            return Err(Error::ShapeMismatch(format!(
                "{} flags but target {} has {} components",
                self.k(),
                target,
                target.k()
            )));
        }
        let flags = self
            .flags
            .iter()
            .zip(target.comps())
            .map(|(f, c)| f.reshape(c))
            .collect::<Result<Vec<_>>>()?;
        FlagObject::new(self.ambient, flags)
    }

    /// Removes repeated members from every flag.
    pub fn compress(&self) -> Self {
        let target = self.dim_vector().compress().expect("non-zero ambient");
        self.reshape(&target).expect("compression is always consistent")
    }

    /// Inserts repeated members so the dimension vector becomes `target`,
    /// whose compression must equal that of `self`.
    pub fn decompress(&self, target: &DimVector) -> Result<Self> {
        let mine = self.dim_vector().compress()?;
        let theirs = target.compress()?;
        if mine != theirs {
            return Err(Error::ShapeMismatch(format!(
                "{} does not compress to {}",
                target, mine
            )));
        }
        self.reshape(target)
    }

    /// Intersects every member with `u` and expresses the result in the
    /// coordinates of the RREF basis of `u`.
    pub fn induced_subobject(&self, u: &Subspace<F>) -> Result<Self> {
        if u.ambient_dim() != self.ambient {
            return Err(Error::ShapeMismatch("subspace lives in another ambient space".into()));
        }
        if u.is_zero() {
            return Err(Error::ZeroDimensional);
        }
        let m = u.dim();
        let mut flags = Vec::with_capacity(self.k());
        for f in &self.flags {
            let mut chain = Vec::with_capacity(f.chain.len());
            for a in &f.chain {
                let w = a.intersect(u)?;
                let rows = (0..w.dim()).map(|i| u.coordinates(w.basis().row(i))).collect();
                chain.push(Subspace::from_rows(m, rows)?);
            }
            flags.push(Flag::from_chain(chain)?);
        }
        FlagObject::new(m, flags)
    }

    /// Dual object on the same coordinate space: step `i` of each flag
    /// becomes the annihilator of step `p - i`.
    pub fn dual(&self) -> Self {
        let flags = self
            .flags
            .iter()
            .map(|f| {
                let p = f.len();
                Flag { chain: (0..=p).map(|i| f.chain[p - i].annihilator()).collect() }
            })
            .collect();
        FlagObject { ambient: self.ambient, flags }
    }

    /// Checks `<A_i, A_{p-i}> = 0` for every flag under the standard form, and
    /// that the dimension vector is symmetric.
    pub fn is_symplectic(&self) -> bool {
        if !self.ambient.is_multiple_of(2) || !self.dim_vector().is_symmetric() {
            return false;
        }
        let w = standard_form::<F>(self.ambient);
        self.flags.iter().all(|f| {
            let p = f.len();
            (1..p).all(|i| {
                let a = f.chain[i].basis();
                let b = f.chain[p - i].basis();
                a.nrows() == 0 || b.nrows() == 0 || a.mul(&w).mul(&b.transpose()).is_zero()
            })
        })
    }

    /// Flags of the form `A_i ⊕ B_i` on the block coordinates `(x, y)`.
    pub fn direct_sum(&self, other: &FlagObject<F>) -> Result<Self> {
        if self.k() != other.k() {
            return Err(Error::ShapeMismatch("different numbers of flags".into()));
        }
        let (m, n) = (self.ambient, other.ambient);
        let mut flags = Vec::with_capacity(self.k());
        for (f, g) in self.flags.iter().zip(&other.flags) {
            if f.len() != g.len() {
                return Err(Error::ShapeMismatch(format!(
                    "flag lengths differ: {} vs {}",
                    f.composition(),
                    g.composition()
                )));
            }
            let chain = f
                .chain
                .iter()
                .zip(&g.chain)
                .map(|(a, b)| Subspace::row_space(&a.basis().block_diag(b.basis())))
                .collect();
            flags.push(Flag::from_chain(chain)?);
        }
        FlagObject::new(m + n, flags)
    }

    /// Orthogonal direct sum of two symplectic objects, reordered so that the
    /// standard form on the result restricts to the standard forms on both.
    pub fn sp_direct_sum(&self, other: &FlagObject<F>) -> Result<Self> {
        let (m, k) = (self.ambient / 2, other.ambient / 2);
        let s = self.direct_sum(other)?;
        // old coordinates: x_0..x_{2m-1}, y_0..y_{2k-1}
        let mut perm = Vec::with_capacity(2 * (m + k));
        perm.extend(0..m);
        perm.extend((0..k).map(|j| 2 * m + j));
        perm.extend((k..2 * k).map(|j| 2 * m + j));
        perm.extend(m..2 * m);
        Ok(s.permute_coordinates(&perm))
    }

    /// `I ⊕ I*` with `V` on the first half of the coordinates and `V*` on the
    /// second half in reversed order, so the standard form pairs them by the
    /// dot product.
    pub fn sym_double(&self) -> Self {
        let m = self.ambient;
        let s = self.direct_sum(&self.dual()).expect("dual has the same shape");
        let mut perm: Vec<usize> = (0..m).collect();
        perm.extend((0..m).map(|j| 2 * m - 1 - j));
        s.permute_coordinates(&perm)
    }

    /// Drops the flags at the given indices.
    pub fn select_flags(&self, idx: &[usize]) -> Self {
        self.permute_flags(idx)
    }
}

/// The permutation matrix sending `v` to `(v[perm[0]], v[perm[1]], ...)`.
pub fn permutation_matrix<F: Field>(perm: &[usize]) -> Matrix<F> {
    let n = perm.len();
    let mut p = Matrix::zeros(n, n);
    for (j, &i) in perm.iter().enumerate() {
        p.set(i, j, F::one());
    }
    p
}

/// Gram matrix of the standard form: `<e_i, e_{2n+1-i}> = 1` for `i <= n`.
pub fn standard_form<F: Field>(two_n: usize) -> Matrix<F> {
    let n = two_n / 2;
    let mut w = Matrix::zeros(two_n, two_n);
    for i in 0..two_n {
        let x = if i < n { F::one() } else { F::one().neg() };
        w.set(i, two_n - 1 - i, x);
    }
    w
}

/// `{v : <v, u> = 0 for all u in U}` under the standard form.
pub fn orthogonal<F: Field>(u: &Subspace<F>) -> Result<Subspace<F>> {
    let n = u.ambient_dim();
    if !n.is_multiple_of(2) {
        return Err(Error::OddWeight(n as u32));
    }
    if u.is_zero() {
        return Ok(Subspace::full(n));
    }
    let w = standard_form::<F>(n);
    Ok(Subspace::row_space(&u.basis().mul(&w).nullspace()))
}

/// Symplectic form value `<x, y>`.
pub fn pairing<F: Field>(x: &[F], y: &[F]) -> F {
    let n = x.len();
    let h = n / 2;
    let mut s = F::zero();
    for i in 0..n {
        let j = n - 1 - i;
        let t = x[i].mul(&y[j]);
        s = if i < h { s.add(&t) } else { s.sub(&t) };
    }
    s
}

/// True iff `g` preserves the standard form.
pub fn is_symplectic_matrix<F: Field>(g: &Matrix<F>) -> bool {
    let w = standard_form::<F>(g.nrows());
    g.mul(&w).mul(&g.transpose()) == w
}

/// The transvection `x -> x + c <x, v> v`.
pub fn transvection<F: Field>(v: &[F], c: &F) -> Matrix<F> {
    let n = v.len();
    let w = standard_form::<F>(n);
    // x * (I + c W v^T v)
    let wv: Vec<F> = (0..n)
        .map(|i| (0..n).fold(F::zero(), |acc, j| acc.add(&w.get(i, j).mul(&v[j]))))
        .collect();
    let mut t: Matrix<F> = Matrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            let x = t.get(i, j).add(&c.mul(&wv[i]).mul(&v[j]));
            t.set(i, j, x);
        }
    }
    t
}

/// A random symplectic matrix: a product of `steps` transvections with small
/// integer data.
pub fn random_symplectic_matrix<F: Field, R: Rng>(two_n: usize, steps: usize, rng: &mut R) -> Matrix<F> {
    let mut g = Matrix::identity(two_n);
    for _ in 0..steps {
        let v: Vec<F> = (0..two_n).map(|_| F::from_i64(rng.random_range(-2..=2))).collect();
        let mut c = rng.random_range(-2..=2);
        if c == 0 {
            c = 1;
        }
        g = g.mul(&transvection(&v, &F::from_i64(c)));
    }
    g
}

/// A random invertible matrix with small integer entries.
pub fn random_invertible<F: Field, R: Rng>(n: usize, range: i64, rng: &mut R) -> Matrix<F> {
    loop {
        let g = Matrix::from_fn(n, n, |_, _| F::from_i64(rng.random_range(-range..=range)));
        if g.is_invertible() {
            return g;
        }
    }
}

/// A random object with the given dimension vector; each flag is cut from the
/// rows of an independent random invertible matrix.
pub fn random_object<F: Field, R: Rng>(d: &DimVector, range: i64, rng: &mut R) -> Result<FlagObject<F>> {
    let n = d.weight() as usize;
    let flags = d
        .comps()
        .iter()
        .map(|c| {
            let g = random_invertible::<F, R>(n, range, rng);
            let chain = c
                .partial_sums()
                .iter()
                .map(|&s| match s {
                    0 => Subspace::zero(n),
                    _ => Subspace::row_space(&g.select_rows(&(0..s as usize).collect::<Vec<_>>())),
                })
                .collect();
            Flag::from_chain(chain)
        })
        .collect::<Result<Vec<_>>>()?;
    FlagObject::new(n, flags)
}

#[derive(Serialize, Deserialize)]
struct FlagJson {
    composition: Vec<u32>,
    subspaces: Vec<Vec<Vec<String>>>,
}

#[derive(Serialize, Deserialize)]
struct ObjectJson {
    field: String,
    ambient_dim: usize,
    flags: Vec<FlagJson>,
}

impl<F: Field> Serialize for FlagObject<F> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let flags = self
            .flags
            .iter()
            .map(|f| FlagJson {
                composition: f.composition().parts().to_vec(),
                subspaces: f
                    .proper_members()
                    .iter()
                    .map(|a| {
                        a.basis().rows_vec().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
                    })
                    .collect(),
            })
            .collect();
        ObjectJson { field: F::tag().to_string(), ambient_dim: self.ambient, flags }.serialize(s)
    }
}

impl<'de, F: Field> Deserialize<'de> for FlagObject<F> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = ObjectJson::deserialize(d)?;
        from_json_parts(j).map_err(D::Error::custom)
    }
}

fn from_json_parts<F: Field>(j: ObjectJson) -> Result<FlagObject<F>> {
    if j.field != F::tag() {
        return Err(Error::FieldMismatch { expected: F::tag().into(), found: j.field });
    }
    let n = j.ambient_dim;
    if n > MAX_AMBIENT {
        return Err(Error::SizeGuard(format!("ambient dimension {} exceeds {}", n, MAX_AMBIENT)));
    }
    let mut flags = Vec::with_capacity(j.flags.len());
    for fj in j.flags {
        let comp = Composition::new(fj.composition)?;
        if fj.subspaces.len() + 1 != comp.len() {
            return Err(Error::InvalidFlag(format!(
                "composition {} needs {} proper members, found {}",
                comp,
                comp.len() - 1,
                fj.subspaces.len()
            )));
        }
        let members = fj
            .subspaces
            .iter()
            .map(|rows| {
                let rows = rows
                    .iter()
                    .map(|r| r.iter().map(|x| F::parse_scalar(x)).collect::<Result<Vec<F>>>())
                    .collect::<Result<Vec<_>>>()?;
                Subspace::from_rows(n, rows)
            })
            .collect::<Result<Vec<_>>>()?;
        let flag = Flag::new(n, members)?;
        if flag.composition() != comp {
            return Err(Error::InvalidFlag(format!(
                "members have jumps {} but composition {} was declared",
                flag.composition(),
                comp
            )));
        }
        flags.push(flag);
    }
    FlagObject::new(n, flags)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Q;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn vq(r: &[i64]) -> Vec<Q> {
        r.iter().map(|&x| Q::from_i64(x)).collect()
    }

    fn span(n: usize, rows: &[&[i64]]) -> Subspace<Q> {
        Subspace::from_rows(n, rows.iter().map(|r| vq(r)).collect()).unwrap()
    }

    fn i11() -> FlagObject<Q> {
        FlagObject::from_int_members(2, &[vec![vec![vec![1, 1]]], vec![vec![vec![1, 0]]], vec![vec![vec![0, 1]]]])
            .unwrap()
    }

    #[test]
    fn form_is_standard() {
        let w = standard_form::<Q>(4);
        assert_eq!(w.transpose(), w.scale(&Q::from_i64(-1)));
        assert_eq!(w.det(), Q::one());
        assert_eq!(pairing(&vq(&[1, 0, 0, 0]), &vq(&[0, 0, 0, 1])), Q::one());
        assert_eq!(pairing(&vq(&[0, 0, 0, 1]), &vq(&[1, 0, 0, 0])), Q::from_i64(-1));
        assert_eq!(pairing(&vq(&[0, 1, 0, 0]), &vq(&[0, 0, 1, 0])), Q::one());
    }

    #[test]
    fn orthogonals() {
        assert!(orthogonal(&Subspace::<Q>::zero(4)).unwrap().is_full());
        let e1 = span(2, &[&[1, 0]]);
        assert_eq!(orthogonal(&e1).unwrap(), e1);
        let lag = span(4, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
        assert_eq!(orthogonal(&lag).unwrap(), lag);
        let u = span(4, &[&[1, 1, 0, 1]]);
        let expect = span(4, &[&[0, 1, 0, 0], &[1, 0, 0, 1], &[1, 0, 1, 0]]);
        assert_eq!(orthogonal(&u).unwrap(), expect);
        let e1 = span(4, &[&[1, 0, 0, 0]]);
        assert_eq!(orthogonal(&e1).unwrap(), span(4, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]]));
    }

    #[test]
    fn dim_vectors_and_symplecticity() {
        let x = i11();
        assert_eq!(x.dim_vector().to_string(), "1,1;1,1;1,1");
        assert!(x.is_symplectic());
        let gl = FlagObject::<Q>::from_int_members(1, &[vec![], vec![], vec![vec![]]]).unwrap();
        assert_eq!(gl.dim_vector().to_string(), "1;1;0,1");
        assert!(!gl.is_symplectic());
        assert!(FlagObject::<Q>::new(0, vec![Flag::trivial(0)]).is_err());
    }

    #[test]
    fn duals() {
        let x = FlagObject::<Q>::from_int_members(1, &[vec![], vec![], vec![vec![vec![1]]]]).unwrap();
        assert_eq!(x.dim_vector().to_string(), "1;1;1,0");
        assert_eq!(x.dual().dim_vector().to_string(), "1;1;0,1");
        assert_eq!(x.dual().dual(), x);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let d: DimVector = "2,1;1,1,1;1,2".parse().unwrap();
        let y = random_object::<Q, _>(&d, 3, &mut rng).unwrap();
        assert_eq!(y.dual().dim_vector(), d.opposite());
        assert_eq!(y.dual().dual(), y);
    }

    #[test]
    fn doubling() {
        let full = FlagObject::<Q>::from_int_members(1, &[vec![], vec![], vec![]]).unwrap();
        let s = full.sym_double();
        assert_eq!(s.dim_vector().to_string(), "2;2;2");
        assert!(s.is_symplectic());
        let x = FlagObject::<Q>::from_int_members(1, &[vec![], vec![], vec![vec![]]]).unwrap();
        let s = x.sym_double();
        assert_eq!(s.dim_vector().to_string(), "2;2;1,1");
        assert!(s.is_symplectic());
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for d in ["2,1;1,1,1;1,0,2", "1,2;3;2,1", "1,1,1;2,1;0,3"] {
            let d: DimVector = d.parse().unwrap();
            let y = random_object::<Q, _>(&d, 2, &mut rng).unwrap();
            let s = y.sym_double();
            assert!(s.is_symplectic());
            assert_eq!(s.dim_vector(), d.add(&d.opposite()).unwrap());
        }
    }

    #[test]
    fn symplectic_sums() {
        let x = i11();
        let y = FlagObject::<Q>::from_int_members(1, &[vec![vec![]], vec![vec![vec![1]]], vec![vec![vec![1]]]])
            .unwrap()
            .sym_double();
        assert_eq!(y.dim_vector().to_string(), "1,1;1,1;1,1");
        assert!(y.is_symplectic());
        let s = x.sp_direct_sum(&y).unwrap();
        assert_eq!(s.dim_vector().to_string(), "2,2;2,2;2,2");
        assert!(s.is_symplectic());
        let line = FlagObject::<Q>::from_int_members(1, &[vec![], vec![], vec![]]).unwrap().sym_double();
        assert!(x.sp_direct_sum(&line).is_err());
    }

    #[test]
    fn compression_round_trip() {
        let u = span(3, &[&[1, 0, 0]]);
        let f = Flag::new(3, vec![u.clone(), u.clone()]).unwrap();
        assert_eq!(f.composition().to_string(), "1,0,2");
        let x = FlagObject::new(3, vec![f]).unwrap();
        let c = x.compress();
        assert_eq!(c.dim_vector().to_string(), "1,2");
        assert_eq!(c.decompress(&"1,0,2".parse().unwrap()).unwrap(), x);
        let i = i11();
        let t: DimVector = "1,1;1,1;0,1,1,0".parse().unwrap();
        let dx = i.decompress(&t).unwrap();
        assert_eq!(dx.dim_vector(), t);
        assert!(dx.is_symplectic());
        assert_eq!(dx.compress(), i);
        assert!(i.decompress(&"1,1;1,1;2".parse().unwrap()).is_err());
    }

    #[test]
    fn subobjects() {
        let x = i11();
        assert_eq!(x.induced_subobject(&Subspace::full(2)).unwrap(), x);
        assert_eq!(x.induced_subobject(&Subspace::zero(2)), Err(Error::ZeroDimensional));
        let s = x.induced_subobject(&span(2, &[&[1, 0]])).unwrap();
        assert_eq!(s.dim_vector().to_string(), "0,1;1,0;0,1");
    }

    #[test]
    fn symplectic_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let g = random_symplectic_matrix::<Q, _>(6, 8, &mut rng);
            assert!(is_symplectic_matrix(&g));
        }
        let x = i11();
        let g = random_symplectic_matrix::<Q, _>(2, 5, &mut rng);
        assert!(x.transform(&g).is_symplectic());
    }

    #[test]
    fn json_round_trip() {
        let x = i11();
        let s = serde_json::to_string(&x).unwrap();
        assert!(s.starts_with(r#"{"field":"Q","ambient_dim":2,"flags":[{"composition":[1,1],"subspaces":[[["1","1"]]]}"#));
        let y: FlagObject<Q> = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
        let bad = s.replace("[1,1]", "[2,0]");
        assert!(serde_json::from_str::<FlagObject<Q>>(&bad).is_err());
    }
}
