//! Orbit parametrization: families of labeled indecomposable summands, their
//! count, and explicit representatives.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::catalog;
use crate::classifier::{classify, validate_symmetric, Classification};
use crate::compositions::{is_summand, Composition, DimVector};
use crate::error::{Error, Result};
use crate::exactlin::Q;
use crate::flagobj::FlagObject;

/// A multiset of labeled symplectic indecomposables: `(e, label) -> m`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitFamily {
    entries: BTreeMap<(DimVector, usize), u32>,
}

impl OrbitFamily {
    pub fn insert(&mut self, e: DimVector, label: usize, m: u32) {
        if m > 0 {
            *self.entries.entry((e, label)).or_insert(0) += m;
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&DimVector, usize, u32)> {
        self.entries.iter().map(|((e, l), m)| (e, *l, *m))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `Σ m·e`, or `None` for the empty family.
    pub fn dim_vector(&self) -> Result<Option<DimVector>> {
        let mut acc: Option<DimVector> = None;
        for (e, _, m) in self.entries() {
            for _ in 0..m {
                acc = Some(match acc {
                    None => e.clone(),
                    Some(a) => a.add(e)?,
                });
            }
        }
        Ok(acc)
    }
}

impl fmt::Display for OrbitFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries().map(|(e, l, m)| format!("{}x({})#{}", m, e, l)).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    e: DimVector,
    label: usize,
    m: u32,
}

#[derive(Serialize, Deserialize)]
struct FamilyJson {
    entries: Vec<EntryJson>,
}

impl Serialize for OrbitFamily {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FamilyJson {
            entries: self.entries().map(|(e, label, m)| EntryJson { e: e.clone(), label, m }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for OrbitFamily {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = FamilyJson::deserialize(d)?;
        let mut f = OrbitFamily::default();
        for en in j.entries {
            if en.m == 0 {
                return Err(D::Error::custom("multiplicities must be positive"));
            }
            f.insert(en.e, en.label, en.m);
        }
        Ok(f)
    }
}

/// Brings a symmetric dimension vector into the three-flag shape used for
/// counting: extra trivial flags are dropped and missing ones padded with
/// `(2n)`. Fails with the witness when `d` is of infinite type.
pub fn prepare(d: &DimVector) -> Result<DimVector> {
    validate_symmetric(d)?;
    if let Classification::Infinite(w) = classify(d)? {
        return Err(Error::InfiniteType(w));
    }
    if d.k() == 3 {
        return Ok(d.clone());
    }
    let w = d.weight();
    let mut comps: Vec<Composition> = d.comps().to_vec();
    while comps.len() > 3 {
        let i = comps.iter().position(|c| c.nonzero_len() <= 1).expect("finite type has at most three non-trivial flags");
        comps.remove(i);
    }
    while comps.len() < 3 {
        comps.push(Composition::trivial(w));
    }
    DimVector::new(comps)
}

/// Symmetric summands of `d` whose compressed form is in the catalog, with
/// their multiplicities μ, sorted.
pub fn sp_pi(d: &DimVector) -> Result<Vec<(DimVector, usize)>> {
    let d = prepare(d)?;
    let mut out = Vec::new();
    for row in catalog::rows() {
        for e in catalog::expansions_of_row(row, &d.lengths()) {
            if is_summand(&e, &d)? {
                out.push((e, row.mu()));
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Number of label multisets of size `m` drawn from `mu` labels.
fn multisets(mu: usize, m: u32) -> BigUint {
    binomial(mu as u64 + m as u64 - 1, m as u64)
}

struct Counter {
    items: Vec<(DimVector, usize)>,
    memo: HashMap<(usize, DimVector), BigUint>,
}

impl Counter {
    fn new(items: Vec<(DimVector, usize)>) -> Self {
        Counter { items, memo: HashMap::new() }
    }

    /// Labeled families using items `idx..` that sum to `residual`.
    fn count(&mut self, idx: usize, residual: &DimVector) -> BigUint {
        if residual.is_zero() {
            return BigUint::one();
        }
        if idx == self.items.len() {
            return BigUint::zero();
        }
        let key = (idx, residual.clone());
        if let Some(c) = self.memo.get(&key) {
            return c.clone();
        }
        let (e, mu) = self.items[idx].clone();
        let mut total = BigUint::zero();
        let mut r = residual.clone();
        let mut m = 0u32;
        loop {
            let sub = self.count(idx + 1, &r);
            if !sub.is_zero() {
                total += multisets(mu, m) * sub;
            }
            match r.checked_sub(&e).expect("same shape") {
                Some(next) => {
                    r = next;
                    m += 1;
                }
                None => break,
            }
        }
        self.memo.insert(key, total.clone());
        total
    }
}

pub fn orbit_count(d: &DimVector) -> Result<BigUint> {
    let d = prepare(d)?;
    let mut c = Counter::new(sp_pi(&d)?);
    Ok(c.count(0, &d))
}

/// Next item index, residual dimension vector, and the `(item, multiplicity)`
/// choices made so far.
type Branch = (usize, DimVector, Vec<(usize, u32)>);

/// Streams every orbit family of `d` exactly once, in a fixed order.
pub struct OrbitFamilies {
    counter: Counter,
    stack: Vec<Branch>,
    current: Option<LabelChoices>,
}

struct LabelChoices {
    slots: Vec<(DimVector, usize, u32)>,
    seqs: Vec<Vec<usize>>,
    started: bool,
}

impl LabelChoices {
    fn new(slots: Vec<(DimVector, usize, u32)>) -> Self {
        let seqs = slots.iter().map(|(_, _, m)| vec![1; *m as usize]).collect();
        LabelChoices { slots, seqs, started: false }
    }

    fn family(&self) -> OrbitFamily {
        let mut f = OrbitFamily::default();
        for ((e, _, _), seq) in self.slots.iter().zip(&self.seqs) {
            for &l in seq {
                f.insert(e.clone(), l, 1);
            }
        }
        f
    }

    fn advance(&mut self) -> bool {
        for s in (0..self.seqs.len()).rev() {
            let mu = self.slots[s].1;
            let seq = &mut self.seqs[s];
            if let Some(i) = (0..seq.len()).rev().find(|&i| seq[i] < mu) {
                let v = seq[i] + 1;
                for x in &mut seq[i..] {
                    *x = v;
                }
                for later in &mut self.seqs[s + 1..] {
                    for x in later.iter_mut() {
                        *x = 1;
                    }
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for LabelChoices {
    type Item = OrbitFamily;

    fn next(&mut self) -> Option<OrbitFamily> {
        if !self.started {
            self.started = true;
            return Some(self.family());
        }
        self.advance().then(|| self.family())
    }
}

impl Iterator for OrbitFamilies {
    type Item = OrbitFamily;

    fn next(&mut self) -> Option<OrbitFamily> {
        loop {
            if let Some(cur) = &mut self.current {
                if let Some(f) = cur.next() {
                    return Some(f);
                }
                self.current = None;
            }
            let (idx, residual, chosen) = self.stack.pop()?;
            if residual.is_zero() {
                let slots = chosen
                    .iter()
                    .map(|&(i, m)| (self.counter.items[i].0.clone(), self.counter.items[i].1, m))
                    .collect();
                self.current = Some(LabelChoices::new(slots));
                continue;
            }
            if idx == self.counter.items.len() {
                continue;
            }
            let e = self.counter.items[idx].0.clone();
            let mut children = Vec::new();
            let mut r = residual;
            let mut m = 0u32;
            loop {
                if !self.counter.count(idx + 1, &r).is_zero() {
                    let mut c = chosen.clone();
                    if m > 0 {
                        c.push((idx, m));
                    }
                    children.push((idx + 1, r.clone(), c));
                }
                match r.checked_sub(&e).expect("same shape") {
                    Some(next) => {
                        r = next;
                        m += 1;
                    }
                    None => break,
                }
            }
            // smallest multiplicity first
            self.stack.extend(children.into_iter().rev());
        }
    }
}

pub fn orbit_families(d: &DimVector) -> Result<OrbitFamilies> {
    let d = prepare(d)?;
    let mut counter = Counter::new(sp_pi(&d)?);
    let stack = if counter.count(0, &d).is_zero() { Vec::new() } else { vec![(0, d, Vec::new())] };
    Ok(OrbitFamilies { counter, stack, current: None })
}

/// Orthogonal direct sum of the catalog representatives named by `fam`.
pub fn orbit_representative(fam: &OrbitFamily) -> Result<FlagObject<Q>> {
    let mut acc: Option<FlagObject<Q>> = None;
    for (e, label, m) in fam.entries() {
        let rep = catalog::expanded_representative(e, label)?;
        for _ in 0..m {
            acc = Some(match acc {
                None => rep.clone(),
                Some(a) => a.sp_direct_sum(&rep)?,
            });
        }
    }
    acc.ok_or(Error::ZeroDimensional)
}

/// `c_n` = number of orbits on triples (Lagrangian, Lagrangian, full isotropic
/// flag) in dimension `2n`, for `n = 0..=n_max`.
pub fn lagrangian_pair_series(n_max: u32) -> Result<Vec<BigUint>> {
    if n_max > 8 {
        return Err(Error::SizeGuard(format!("series requested up to n = {}, limit is 8", n_max)));
    }
    let mut out = vec![BigUint::one()];
    for n in 1..=n_max {
        let d: DimVector = format!("{n},{n};{n},{n};1^{}", 2 * n).parse()?;
        out.push(orbit_count(&d)?);
    }
    Ok(out)
}
