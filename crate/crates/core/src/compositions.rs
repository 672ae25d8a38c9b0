//! Compositions and dimension vectors.
//!
//! A [`Composition`] is the jump sequence of a single flag; a [`DimVector`]
//! collects one composition per flag of a multiple flag object.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::EmptyComposition);
        }
        Ok(Composition(parts))
    }

    /// The one-part composition `(w)`.
    pub fn trivial(w: u32) -> Self {
        Composition(vec![w])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn opposite(&self) -> Self {
        let mut p = self.0.clone();
        p.reverse();
        Composition(p)
    }

    pub fn is_symmetric(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }

    /// Number of non-zero parts.
    pub fn nonzero_len(&self) -> usize {
        self.0.iter().filter(|&&x| x != 0).count()
    }

    /// Drops zero parts. Fails on an all-zero composition.
    pub fn compress(&self) -> Result<Self> {
        let p: Vec<u32> = self.0.iter().copied().filter(|&x| x != 0).collect();
        if p.is_empty() {
            return Err(Error::ZeroWeight(self.to_string()));
        }
        Ok(Composition(p))
    }

    /// Indices of the non-zero parts.
    pub fn nonzero_positions(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] != 0).collect()
    }

    /// Partial sums `s_0 = 0, s_1 = a_1, ..., s_p = |a|`.
    pub fn partial_sums(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.0.len() + 1);
        let mut s = 0;
        out.push(0);
        for &x in &self.0 {
            s += x;
            out.push(s);
        }
        out
    }

    /// Squared Euclidean norm of the parts.
    pub fn norm2(&self) -> u64 {
        self.0.iter().map(|&x| (x as u64) * (x as u64)).sum()
    }

    /// Places the parts of `self` at `positions` of a length-`len` composition,
    /// filling the rest with zeros.
    pub fn spread(&self, positions: &[usize], len: usize) -> Result<Self> {
        if positions.len() != self.0.len() || positions.iter().any(|&p| p >= len) {
            return Err(Error::ShapeMismatch(format!(
                "cannot spread {} over positions {:?} of length {}",
                self, positions, len
            )));
        }
        let mut p = vec![0; len];
        for (&pos, &x) in positions.iter().zip(&self.0) {
            p[pos] = x;
        }
        Composition::new(p)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for Composition {
    type Err = Error;

    /// Accepts `1,2,1`; a part may be written `1^4` for four ones.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::EmptyComposition);
        }
        let mut parts = Vec::new();
        for tok in s.split(',') {
            let tok = tok.trim();
            let (base, rep) = match tok.split_once('^') {
                Some((b, r)) => (b.trim(), r.trim()),
                None => (tok, "1"),
            };
            let x: u32 = base
                .parse()
                .map_err(|_| Error::Parse(format!("bad part {:?} in {:?}", tok, s)))?;
            let r: usize = rep
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent {:?} in {:?}", tok, s)))?;
            parts.extend(std::iter::repeat_n(x, r));
        }
        Composition::new(parts)
    }
}

impl Serialize for Composition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Composition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<u32>::deserialize(d)?;
        Composition::new(v).map_err(serde::de::Error::custom)
    }
}

/// Tuple of compositions of equal weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimVector(Vec<Composition>);

impl DimVector {
    pub fn new(comps: Vec<Composition>) -> Result<Self> {
        if comps.is_empty() {
            return Err(Error::Parse("dimension vector needs at least one component".into()));
        }
        let w = comps[0].weight();
        if comps.iter().any(|c| c.weight() != w) {
            let ws: Vec<String> = comps.iter().map(|c| c.weight().to_string()).collect();
            return Err(Error::WeightMismatch(ws.join(",")));
        }
        Ok(DimVector(comps))
    }

    pub fn comps(&self) -> &[Composition] {
        &self.0
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> u32 {
        self.0[0].weight()
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.0.iter().map(|c| c.len()).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.0.iter().all(|c| c.is_symmetric())
    }

    pub fn opposite(&self) -> Self {
        DimVector(self.0.iter().map(|c| c.opposite()).collect())
    }

    pub fn compress(&self) -> Result<Self> {
        let comps = self.0.iter().map(|c| c.compress()).collect::<Result<Vec<_>>>()?;
        Ok(DimVector(comps))
    }

    /// Componentwise sum; the component lengths must agree.
    pub fn add(&self, other: &DimVector) -> Result<Self> {
        self.check_shape(other)?;
        let comps = self
            .0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| Composition(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect()))
            .collect();
        Ok(DimVector(comps))
    }

    /// Componentwise difference `self - other`, or `None` if some part goes
    /// negative.
    pub fn checked_sub(&self, other: &DimVector) -> Result<Option<Self>> {
        self.check_shape(other)?;
        let mut comps = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            let mut p = Vec::with_capacity(a.len());
            for (x, y) in a.0.iter().zip(&b.0) {
                match x.checked_sub(*y) {
                    Some(z) => p.push(z),
                    None => return Ok(None),
                }
            }
            comps.push(Composition(p));
        }
        Ok(Some(DimVector(comps)))
    }

    pub fn is_zero(&self) -> bool {
        self.weight() == 0
    }

    /// Reorders the components: `result[i] = self[perm[i]]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        DimVector(perm.iter().map(|&i| self.0[i].clone()).collect())
    }

    /// Sorts components by their number of non-zero parts. Ties keep the
    /// original order. Returns the sorted vector and the permutation used
    /// (`result[i] = self[perm[i]]`).
    pub fn sort_by_nonzero_lengths(&self) -> (Self, Vec<usize>) {
        let mut perm: Vec<usize> = (0..self.0.len()).collect();
        perm.sort_by_key(|&i| self.0[i].nonzero_len());
        (self.permute(&perm), perm)
    }

    fn check_shape(&self, other: &DimVector) -> Result<()> {
        if self.lengths() != other.lengths() {
            return Err(Error::ShapeMismatch(format!(
                "component lengths differ: {} vs {}",
                self, other
            )));
        }
        Ok(())
    }
}

/// True iff `d - e` has non-negative parts, equal lengths and equal weights.
pub fn is_summand(e: &DimVector, d: &DimVector) -> Result<bool> {
    if e.k() != d.k() {
        return Err(Error::ShapeMismatch(format!("{} and {} have different k", e, d)));
    }
    if e.lengths() != d.lengths() {
        return Ok(false);
    }
    // differences of components with equal weights have equal weights
    Ok(d.checked_sub(e)?.is_some())
}

/// All symmetric compositions of length `len` whose compression is `t`, in
/// lexicographic order of their non-zero positions.
pub fn symmetric_zero_insertions(t: &Composition, len: usize) -> Vec<Composition> {
    let m = t.len();
    let mut out = Vec::new();
    if m > len || !t.is_symmetric() || t.0.contains(&0) {
        return out;
    }
    let mut pos = Vec::with_capacity(m);
    choose_positions(len, m, 0, &mut pos, &mut |pos| {
        if pos.iter().zip(pos.iter().rev()).all(|(&a, &b)| a + b == len - 1) {
            out.push(t.spread(pos, len).expect("positions in range"));
        }
    });
    out
}

/// All compositions of length `len` whose compression is `t`.
pub fn zero_insertions(t: &Composition, len: usize) -> Vec<Composition> {
    let m = t.len();
    let mut out = Vec::new();
    if m > len || t.0.contains(&0) {
        return out;
    }
    let mut pos = Vec::with_capacity(m);
    choose_positions(len, m, 0, &mut pos, &mut |pos| {
        out.push(t.spread(pos, len).expect("positions in range"));
    });
    out
}

fn choose_positions(
    len: usize,
    m: usize,
    start: usize,
    pos: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize]),
) {
    if pos.len() == m {
        f(pos);
        return;
    }
    let remaining = m - pos.len();
    for i in start..=(len - remaining) {
        pos.push(i);
        choose_positions(len, m, i + 1, pos, f);
        pos.pop();
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", s.join(";"))
    }
}

impl FromStr for DimVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let comps = s
            .split(';')
            .map(|c| c.parse::<Composition>())
            .collect::<Result<Vec<_>>>()?;
        DimVector::new(comps)
    }
}

impl Serialize for DimVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for DimVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
