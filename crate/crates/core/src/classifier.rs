//! Finite-type classification of triples of symmetric compositions, the Tits
//! form, and dimensions of symplectic flag varieties.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::compositions::{is_summand, symmetric_zero_insertions, zero_insertions, Composition, DimVector};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FiniteType {
    SpA,
    SpD,
    SpE6,
    SpE7,
    SpE8,
    SpEb,
    SpY,
}

impl FiniteType {
    pub fn name(self) -> &'static str {
        match self {
            FiniteType::SpA => "SpA",
            FiniteType::SpD => "SpD",
            FiniteType::SpE6 => "SpE6",
            FiniteType::SpE7 => "SpE7",
            FiniteType::SpE8 => "SpE8",
            FiniteType::SpEb => "SpEb",
            FiniteType::SpY => "SpY",
        }
    }
}

/// Reason a dimension vector is of infinite type: one of the five minimal
/// summands, or more than three non-trivial flags.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Witness {
    F1,
    F2,
    F3,
    F4,
    F5,
    K4,
}

impl Witness {
    pub const SUMMANDS: [Witness; 5] = [Witness::F1, Witness::F2, Witness::F3, Witness::F4, Witness::F5];

    pub fn name(self) -> &'static str {
        match self {
            Witness::F1 => "f1",
            Witness::F2 => "f2",
            Witness::F3 => "f3",
            Witness::F4 => "f4",
            Witness::F5 => "f5",
            Witness::K4 => "k>=4",
        }
    }

    /// The witness dimension vector (compressed).
    pub fn dim_vector(self) -> DimVector {
        let s = match self {
            Witness::F1 => "1^4;1^4;1^4",
            Witness::F2 => "1,2,1;1^4;1^4",
            Witness::F3 => "2,2;1^4;1^4",
            Witness::F4 => "3,3;2^3;1^6",
            Witness::F5 => "2^3;2^3;2^3",
            Witness::K4 => "1,1;1,1;1,1;1,1",
        };
        s.parse().expect("static witness")
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for FiniteType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl Serialize for FiniteType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    Finite(FiniteType),
    Infinite(Witness),
}

impl Classification {
    pub fn is_finite(self) -> bool {
        matches!(self, Classification::Finite(_))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KacBound {
    NoIndecomposable,
    AtMostOne,
    Unbounded,
}

/// `½(Σ ‖a_i‖² − (k−2)·w²)`; for three flags this is `½(‖a‖²+‖b‖²+‖c‖² − w²)`.
pub fn tits_q(d: &DimVector) -> i64 {
    let w = d.weight() as i64;
    let k = d.k() as i64;
    let s: i64 = d.comps().iter().map(|c| c.norm2() as i64).sum();
    let twice = s - (k - 2) * w * w;
    // ‖a‖² ≡ |a| (mod 2), so the numerator is always even
    debug_assert_eq!(twice % 2, 0);
    twice / 2
}

pub fn kac_bound(d: &DimVector) -> KacBound {
    match tits_q(d) {
        q if q > 1 => KacBound::NoIndecomposable,
        1 => KacBound::AtMostOne,
        _ => KacBound::Unbounded,
    }
}

pub fn sp_group_dim(n: u64) -> u64 {
    n * (2 * n + 1)
}

/// Dimension of the isotropic Grassmannian of `k`-planes in a `2n`-space.
pub fn sp_grassmannian_dim(k: u64, n: u64) -> Result<u64> {
    if k > n {
        return Err(Error::ShapeMismatch(format!("isotropic {}-planes need n >= {}, got {}", k, k, n)));
    }
    let t = k * (4 * n + 1 - 3 * k);
    debug_assert_eq!(t % 2, 0);
    Ok(t / 2)
}

/// Dimension of the symplectic flag variety of type `a`, computed by choosing
/// the isotropic steps one at a time in the successive symplectic quotients.
pub fn sp_flag_dim(a: &Composition) -> Result<u64> {
    if !a.is_symmetric() {
        return Err(Error::Asymmetric(a.to_string()));
    }
    if !a.weight().is_multiple_of(2) {
        return Err(Error::OddWeight(a.weight()));
    }
    let mut n = (a.weight() / 2) as u64;
    let mut total = 0;
    for &k in &a.parts()[..a.len() / 2] {
        total += sp_grassmannian_dim(k as u64, n)?;
        n -= k as u64;
    }
    Ok(total)
}

pub fn sp_dv_dim(d: &DimVector) -> Result<u64> {
    d.comps().iter().map(sp_flag_dim).sum()
}

/// Validates a tuple of symmetric compositions of one even weight.
pub fn validate_symmetric(d: &DimVector) -> Result<()> {
    for c in d.comps() {
        if !c.is_symmetric() {
            return Err(Error::Asymmetric(c.to_string()));
        }
    }
    let w = d.weight();
    if w == 0 {
        return Err(Error::ZeroWeight(d.to_string()));
    }
    if !w.is_multiple_of(2) {
        return Err(Error::OddWeight(w));
    }
    Ok(())
}

/// Outcome of normalizing a dimension vector to a compressed sorted triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Normalized {
    Triple(DimVector),
    TooManyFlags,
}

/// Drops trivial components, pads to three with `(2n)`, compresses and sorts
/// by length.
pub fn normalize(d: &DimVector) -> Result<Normalized> {
    validate_symmetric(d)?;
    let w = d.weight();
    let mut comps: Vec<Composition> =
        d.comps().iter().filter(|c| c.nonzero_len() > 1).map(|c| c.compress()).collect::<Result<_>>()?;
    if comps.len() > 3 {
        return Ok(Normalized::TooManyFlags);
    }
    while comps.len() < 3 {
        comps.push(Composition::trivial(w));
    }
    let t = DimVector::new(comps)?;
    Ok(Normalized::Triple(t.sort_by_nonzero_lengths().0))
}

pub fn classify(d: &DimVector) -> Result<Classification> {
    let t = match normalize(d)? {
        Normalized::TooManyFlags => return Ok(Classification::Infinite(Witness::K4)),
        Normalized::Triple(t) => t,
    };
    Ok(classify_triple(&t))
}

/// Walks the decision tree on a compressed sorted triple.
fn classify_triple(t: &DimVector) -> Classification {
    use Classification::*;
    let [a, b, c] = [&t.comps()[0], &t.comps()[1], &t.comps()[2]];
    let (p, q, r) = (a.len(), b.len(), c.len());
    match p {
        1 => Finite(FiniteType::SpA),
        2 => match q {
            2 => Finite(FiniteType::SpD),
            3 => {
                if b.parts()[0] == 1 {
                    Finite(FiniteType::SpEb)
                } else {
                    match r {
                        3 => Finite(FiniteType::SpE6),
                        4 => Finite(FiniteType::SpE7),
                        5 => Finite(FiniteType::SpE8),
                        _ => Infinite(Witness::F4),
                    }
                }
            }
            _ => Infinite(Witness::F3),
        },
        3 => {
            if q >= 4 {
                return Infinite(Witness::F2);
            }
            // some flag is of type (1, 2n-2, 1); when r > 3 only a and b can be
            let thin = a.parts()[0] == 1 || b.parts()[0] == 1 || (r == 3 && c.parts()[0] == 1);
            if thin {
                Finite(FiniteType::SpY)
            } else {
                Infinite(Witness::F5)
            }
        }
        _ => Infinite(Witness::F1),
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    fn rec(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            if !cur.contains(&i) {
                cur.push(i);
                rec(k, cur, out);
                cur.pop();
            }
        }
    }
    rec(k, &mut cur, &mut out);
    out
}

/// All symmetric dimension vectors with the component lengths of `d` whose
/// compression is a flag-permutation of `f` (f and d with the same k).
pub fn symmetric_expansions(f: &DimVector, lengths: &[usize]) -> Vec<DimVector> {
    let mut out = Vec::new();
    for perm in permutations(f.k()) {
        let pf = f.permute(&perm);
        let choices: Vec<Vec<Composition>> = pf
            .comps()
            .iter()
            .zip(lengths)
            .map(|(c, &l)| symmetric_zero_insertions(c, l))
            .collect();
        cartesian(&choices, &mut |comps| {
            if let Ok(e) = DimVector::new(comps.to_vec()) {
                if !out.contains(&e) {
                    out.push(e);
                }
            }
        });
    }
    out
}

pub(crate) fn cartesian<T: Clone>(choices: &[Vec<T>], f: &mut dyn FnMut(&[T])) {
    let mut cur = Vec::with_capacity(choices.len());
    fn rec<T: Clone>(choices: &[Vec<T>], cur: &mut Vec<T>, f: &mut dyn FnMut(&[T])) {
        if cur.len() == choices.len() {
            f(cur);
            return;
        }
        for x in &choices[cur.len()] {
            cur.push(x.clone());
            rec(choices, cur, f);
            cur.pop();
        }
    }
    rec(choices, &mut cur, f);
}

/// Checks that `w` is witnessed by an actual summand of the triple `d`.
///
/// For f1 to f4 this asks for a symmetric expansion of the witness that is a
/// summand of `d`. For f5 the test is slightly more general: some `g` whose
/// components each compress to `(1,1,1)` must satisfy `g + g^op <= d`. Every
/// symmetric expansion of f5 is of this form, and each of the infinitely many
/// classes of dimension `g` doubles to a distinct symplectic class of
/// dimension `g + g^op`.
pub fn verify_witness(d: &DimVector, w: Witness) -> bool {
    match w {
        Witness::K4 => d.comps().iter().filter(|c| c.nonzero_len() > 1).count() >= 4,
        Witness::F5 => d.k() == 3 && has_f5_double(d),
        _ => {
            if d.k() != 3 {
                return false;
            }
            symmetric_expansions(&w.dim_vector(), &d.lengths())
                .iter()
                .any(|e| is_summand(e, d).unwrap_or(false))
        }
    }
}

fn has_f5_double(d: &DimVector) -> bool {
    let t: Composition = "1,1,1".parse().unwrap();
    let mut found = false;
    let choices: Vec<Vec<Composition>> = d
        .comps()
        .iter()
        .map(|c| {
            zero_insertions(&t, c.len())
                .into_iter()
                .filter(|g| {
                    let op = g.opposite();
                    g.parts().iter().zip(op.parts()).zip(c.parts()).all(|((x, y), &z)| x + y <= z)
                })
                .collect()
        })
        .collect();
    if choices.iter().all(|c| !c.is_empty()) {
        found = true;
    }
    found
}

/// All witnesses that can be verified for the triple `d`.
pub fn verifiable_witnesses(d: &DimVector) -> Vec<Witness> {
    Witness::SUMMANDS.iter().copied().filter(|&w| verify_witness(d, w)).collect()
}
