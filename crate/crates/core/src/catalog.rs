//! The table of symplectic indecomposables of finite type, with explicit
//! representatives.
//!
//! Each row is a compressed, length-sorted dimension vector together with its
//! indecomposables. A plain label is a self-dual indecomposable given by
//! fixed coordinates; a symmetrized label `e` stands for `I_e ⊕ I_e*`, where
//! `I_e` is the unique indecomposable multiple flag of dimension `e`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use crate::compositions::{symmetric_zero_insertions, Composition, DimVector};
use crate::decomposer::end_algebra;
use crate::error::{Error, Result};
use crate::exactlin::{Field, Subspace, Q};
use crate::flagobj::{orthogonal, random_object, Flag, FlagObject};

const CATALOG_JSON: &str = include_str!("../data/catalog.json");
const GL_CACHE_JSON: &str = include_str!("../data/gl_indecomposables.json");

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LabelKind {
    /// Self-dual indecomposable; `isotropic[j]` lists the lower-half members
    /// of flag `j`, each as comma-separated vectors like `e1+e3`.
    Plain { index: usize, isotropic: Vec<Vec<String>> },
    Sym { e: DimVector },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndecompLabel {
    pub base: DimVector,
    pub kind: LabelKind,
}

impl IndecompLabel {
    pub fn is_plain(&self) -> bool {
        matches!(self.kind, LabelKind::Plain { .. })
    }

    pub fn sym_e(&self) -> Option<&DimVector> {
        match &self.kind {
            LabelKind::Sym { e } => Some(e),
            LabelKind::Plain { .. } => None,
        }
    }

    /// Short human-readable name, e.g. `I^2` or `sym(1;1,0;0,1)`.
    pub fn name(&self) -> String {
        match &self.kind {
            LabelKind::Plain { index, .. } => format!("I^{}", index),
            LabelKind::Sym { e } => format!("sym({})", e),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogRow {
    pub dims: DimVector,
    pub labels: Vec<IndecompLabel>,
}

impl CatalogRow {
    pub fn mu(&self) -> usize {
        self.labels.len()
    }
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum LabelJson {
    Plain { index: usize, isotropic: Vec<Vec<String>> },
    Sym { e: DimVector },
}

#[derive(Deserialize)]
struct RowJson {
    dims: DimVector,
    labels: Vec<LabelJson>,
    mu: usize,
}

fn load_rows() -> Vec<CatalogRow> {
    let raw: Vec<RowJson> = serde_json::from_str(CATALOG_JSON).expect("catalog data parses");
    raw.into_iter()
        .map(|r| {
            assert_eq!(r.mu, r.labels.len(), "mu of {} disagrees with its labels", r.dims);
            let labels = r
                .labels
                .into_iter()
                .map(|l| IndecompLabel {
                    base: r.dims.clone(),
                    kind: match l {
                        LabelJson::Plain { index, isotropic } => LabelKind::Plain { index, isotropic },
                        LabelJson::Sym { e } => LabelKind::Sym { e },
                    },
                })
                .collect();
            CatalogRow { dims: r.dims, labels }
        })
        .collect()
}

pub fn rows() -> &'static [CatalogRow] {
    static ROWS: OnceLock<Vec<CatalogRow>> = OnceLock::new();
    ROWS.get_or_init(load_rows)
}

fn permutations3() -> [[usize; 3]; 6] {
    [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]]
}

/// Finds the row of a symmetric triple: returns the row index and the first
/// permutation `σ` (in lexicographic order) with `compress(d) ∘ σ = row.dims`.
pub fn locate(d: &DimVector) -> Option<(usize, Vec<usize>)> {
    if d.k() != 3 {
        return None;
    }
    let c = d.compress().ok()?;
    for (i, row) in rows().iter().enumerate() {
        for p in permutations3() {
            if c.permute(&p) == row.dims {
                return Some((i, p.to_vec()));
            }
        }
    }
    None
}

/// Number of symplectic indecomposables of dimension `d`, if `d` is in the table.
pub fn mu(d: &DimVector) -> Option<usize> {
    locate(d).map(|(i, _)| rows()[i].mu())
}

/// All symmetric triples with component lengths `lengths` that compress to a
/// flag permutation of the row's dimension vector.
pub fn expansions_of_row(row: &CatalogRow, lengths: &[usize]) -> Vec<DimVector> {
    let mut out: Vec<DimVector> = Vec::new();
    if lengths.len() != 3 {
        return out;
    }
    for p in permutations3() {
        let pd = row.dims.permute(&p);
        let choices: Vec<Vec<Composition>> = pd
            .comps()
            .iter()
            .zip(lengths)
            .map(|(c, &l)| symmetric_zero_insertions(c, l))
            .collect();
        crate::classifier::cartesian(&choices, &mut |comps| {
            let e = DimVector::new(comps.to_vec()).expect("equal weights");
            if !out.contains(&e) {
                out.push(e);
            }
        });
    }
    out.sort();
    out
}

/// Parses `e1+e3, e2-e4` into vectors of length `n`.
fn parse_vectors(s: &str, n: usize) -> Result<Vec<Vec<Q>>> {
    let bad = || Error::Parse(format!("bad vector list {:?}", s));
    let mut out = Vec::new();
    for v in s.split(',') {
        let mut row = vec![Q::zero(); n];
        let v: String = v.chars().filter(|c| !c.is_whitespace()).collect();
        let mut rest = v.as_str();
        while !rest.is_empty() {
            let (sign, r) = match rest.as_bytes()[0] {
                b'-' => (-1, &rest[1..]),
                b'+' => (1, &rest[1..]),
                _ => (1, rest),
            };
            let r = r.strip_prefix('e').ok_or_else(bad)?;
            let end = r.find(['+', '-']).unwrap_or(r.len());
            let i: usize = r[..end].parse().map_err(|_| bad())?;
            if i == 0 || i > n {
                return Err(bad());
            }
            row[i - 1] = row[i - 1].add(&Q::from_i64(sign));
            rest = &r[end..];
        }
        out.push(row);
    }
    Ok(out)
}

/// Builds a plain representative from the lower halves of its flags.
fn plain_representative(base: &DimVector, isotropic: &[Vec<String>]) -> Result<FlagObject<Q>> {
    let n = base.weight() as usize;
    let mut flags = Vec::with_capacity(3);
    for (c, lower) in base.comps().iter().zip(isotropic) {
        let p = c.len();
        if lower.len() != p / 2 {
            return Err(Error::InvalidFlag(format!("composition {} needs {} lower members", c, p / 2)));
        }
        let low: Vec<Subspace<Q>> =
            lower.iter().map(|s| Subspace::from_rows(n, parse_vectors(s, n)?)).collect::<Result<_>>()?;
        let mut members = low.clone();
        for i in (p / 2 + 1)..p {
            members.push(orthogonal(&low[p - i - 1])?);
        }
        flags.push(Flag::new(n, members)?);
    }
    let x = FlagObject::new(n, flags)?;
    if x.dim_vector() != *base {
        return Err(Error::Internal(format!("plain representative has dimension {}", x.dim_vector())));
    }
    Ok(x)
}

/// A multiple flag of dimension `e` with one-dimensional endomorphism ring,
/// found among seeded random flags with small entries.
pub fn synthesize_gl_indecomposable(e: &DimVector) -> Result<FlagObject<Q>> {
    let seed = e.to_string().bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..400 {
        let range = 1 + attempt / 100;
        let x = random_object::<Q, _>(e, range, &mut rng)?;
        if end_algebra(&x).len() == 1 {
            return Ok(x);
        }
    }
    Err(Error::SearchExhausted(e.to_string()))
}

fn gl_cache() -> &'static BTreeMap<String, FlagObject<Q>> {
    static CACHE: OnceLock<BTreeMap<String, FlagObject<Q>>> = OnceLock::new();
    CACHE.get_or_init(|| serde_json::from_str(GL_CACHE_JSON).unwrap_or_default())
}

/// The indecomposable of dimension `e` used for symmetrized labels: read from
/// the bundled cache when present, synthesized otherwise.
pub fn gl_indecomposable(e: &DimVector) -> Result<FlagObject<Q>> {
    if let Some(x) = gl_cache().get(&e.to_string()) {
        return Ok(x.clone());
    }
    synthesize_gl_indecomposable(e)
}

fn build_representative(label: &IndecompLabel) -> Result<FlagObject<Q>> {
    match &label.kind {
        LabelKind::Plain { isotropic, .. } => plain_representative(&label.base, isotropic),
        LabelKind::Sym { e } => Ok(gl_indecomposable(e)?.sym_double()),
    }
}

/// Representative of the `idx`-th (0-based) label of row `row`.
pub fn representative(row: usize, idx: usize) -> Result<&'static FlagObject<Q>> {
    static REPS: OnceLock<Vec<Vec<OnceLock<FlagObject<Q>>>>> = OnceLock::new();
    let reps = REPS.get_or_init(|| rows().iter().map(|r| r.labels.iter().map(|_| OnceLock::new()).collect()).collect());
    let label = rows()
        .get(row)
        .and_then(|r| r.labels.get(idx))
        .ok_or_else(|| Error::UnknownLabel(format!("row {} label {}", row, idx + 1)))?;
    let cell = &reps[row][idx];
    if let Some(x) = cell.get() {
        return Ok(x);
    }
    let x = build_representative(label)?;
    Ok(cell.get_or_init(|| x))
}

pub fn label_representative(label: &IndecompLabel) -> Result<FlagObject<Q>> {
    build_representative(label)
}

/// Transports a row representative to the expanded dimension vector `e`
/// located with permutation `sigma`.
pub fn transport(rep: &FlagObject<Q>, sigma: &[usize], e: &DimVector) -> Result<FlagObject<Q>> {
    let mut inv = vec![0; sigma.len()];
    for (i, &s) in sigma.iter().enumerate() {
        inv[s] = i;
    }
    rep.permute_flags(&inv).decompress(e)
}

/// Representative of label `label` (1-based) for the expanded vector `e`.
pub fn expanded_representative(e: &DimVector, label: usize) -> Result<FlagObject<Q>> {
    let (row, sigma) = locate(e).ok_or_else(|| Error::UnknownLabel(e.to_string()))?;
    if label == 0 || label > rows()[row].mu() {
        return Err(Error::UnknownLabel(format!("{} label {}", e, label)));
    }
    transport(representative(row, label - 1)?, &sigma, e)
}
