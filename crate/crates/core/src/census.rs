//! Brute-force orbit counts over small prime fields. Used as an independent
//! check on the combinatorial orbit count.

use std::collections::{HashMap, HashSet, VecDeque};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classifier::validate_symmetric;
use crate::compositions::{Composition, DimVector};
use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix, Subspace, F2, F3};
use crate::flagobj::{standard_form, transvection, Flag, FlagObject};

/// Upper bound on the number of enumerated tuples.
pub const MAX_TUPLES: usize = 1_000_000;
/// Upper bound on the size of a group table built by closure.
pub const MAX_GROUP_ORDER: u64 = 100_000;

/// All elements of `Sp_{2n}(F_q)` together with the generators they were
/// built from.
#[derive(Clone, Debug)]
pub struct FiniteGroupTable<F> {
    pub elements: Vec<Matrix<F>>,
    pub generators: Vec<Matrix<F>>,
    pub order: u64,
}

/// `q^{n^2} Π_{i=1..n} (q^{2i} - 1)`.
pub fn sp_order(two_n: u32, q: u64) -> u64 {
    let n = two_n / 2;
    (1..=n).fold(q.pow(n * n), |acc, i| acc * (q.pow(2 * i) - 1))
}

fn field_q<F: Field>() -> Result<u64> {
    match F::characteristic() {
        0 => Err(Error::FieldMismatch { expected: "F_p".into(), found: F::tag().into() }),
        p => Ok(p),
    }
}

/// Transvections along `e_i` and `e_i + e_j` with every nonzero scalar.
pub fn sp_generators<F: Field>(two_n: usize) -> Vec<Matrix<F>> {
    let scalars: Vec<F> = F::elements().unwrap_or_default().into_iter().filter(|c| !c.is_zero()).collect();
    let mut vs = Vec::new();
    for i in 0..two_n {
        let mut v = vec![F::zero(); two_n];
        v[i] = F::one();
        vs.push(v);
        for j in i + 1..two_n {
            let mut v = vec![F::zero(); two_n];
            v[i] = F::one();
            v[j] = F::one();
            vs.push(v);
        }
    }
    let mut out = Vec::new();
    for v in &vs {
        for c in &scalars {
            let t = transvection(v, c);
            if !out.contains(&t) {
                out.push(t);
            }
        }
    }
    out
}

/// Builds the whole group by breadth-first closure and checks its order.
pub fn sp_group<F: Field>(two_n: usize) -> Result<FiniteGroupTable<F>> {
    let q = field_q::<F>()?;
    if two_n == 0 || two_n % 2 == 1 {
        return Err(Error::OddWeight(two_n as u32));
    }
    let expected = sp_order(two_n as u32, q);
    if expected > MAX_GROUP_ORDER {
        return Err(Error::SizeGuard(format!("|Sp_{}(F_{})| = {} exceeds {}", two_n, q, expected, MAX_GROUP_ORDER)));
    }
    let generators = sp_generators::<F>(two_n);
    let id = Matrix::identity(two_n);
    let mut seen: HashSet<Matrix<F>> = HashSet::from([id.clone()]);
    let mut elements = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in &generators {
            let h = g.mul(s);
            if seen.insert(h.clone()) {
                elements.push(h.clone());
                queue.push_back(h);
            }
        }
    }
    let order = elements.len() as u64;
    if order != expected {
        return Err(Error::Internal(format!("closure gave {} elements, expected {}", order, expected)));
    }
    Ok(FiniteGroupTable { elements, generators, order })
}

/// Every subspace of `F^m`, grouped by dimension.
pub fn all_subspaces<F: Field>(m: usize) -> Vec<Vec<Subspace<F>>> {
    let elems = F::elements().expect("finite field");
    let mut out = vec![Vec::new(); m + 1];
    for mask in 0u32..(1 << m) {
        let pivots: Vec<usize> = (0..m).filter(|&c| mask & (1 << c) != 0).collect();
        let k = pivots.len();
        // free positions: (row r, column c) with c > pivots[r], c not a pivot
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| ((pivots[r] + 1)..m).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
            .collect();
        let total = elems.len().pow(free.len() as u32);
        for code in 0..total {
            let mut rows = vec![vec![F::zero(); m]; k];
            for (r, &p) in pivots.iter().enumerate() {
                rows[r][p] = F::one();
            }
            let mut c = code;
            for &(r, col) in &free {
                rows[r][col] = elems[c % elems.len()].clone();
                c /= elems.len();
            }
            out[k].push(Subspace::from_rows(m, rows).expect("well-formed rows"));
        }
    }
    out
}

fn is_isotropic_pair<F: Field>(a: &Subspace<F>, b: &Subspace<F>, omega: &Matrix<F>) -> bool {
    a.basis().mul(omega).mul(&b.basis().transpose()).is_zero()
}

/// All flags of composition `c` in `F^{2n}` with `A_i ⊥ A_{p-i}`.
fn isotropic_flags<F: Field>(c: &Composition, subspaces: &[Vec<Subspace<F>>], omega: &Matrix<F>) -> Vec<Flag<F>> {
    let sums = c.partial_sums();
    let p = c.len();
    let mut out = Vec::new();
    let mut chain: Vec<Subspace<F>> = Vec::with_capacity(sums.len());
    fn extend<F: Field>(
        sums: &[u32],
        p: usize,
        subspaces: &[Vec<Subspace<F>>],
        omega: &Matrix<F>,
        chain: &mut Vec<Subspace<F>>,
        out: &mut Vec<Flag<F>>,
    ) {
        let i = chain.len();
        if i == sums.len() {
            out.push(Flag::from_chain(chain.clone()).expect("valid chain"));
            return;
        }
        for s in &subspaces[sums[i] as usize] {
            if let Some(prev) = chain.last() {
                if !s.contains(prev) {
                    continue;
                }
            }
            // partner A_{p-i} is already chosen once i > p/2
            if p >= i && p - i < i && !is_isotropic_pair(s, &chain[p - i], omega) {
                continue;
            }
            if p >= i && p - i == i && !is_isotropic_pair(s, s, omega) {
                continue;
            }
            chain.push(s.clone());
            extend(sums, p, subspaces, omega, chain, out);
            chain.pop();
        }
    }
    extend(&sums, p, subspaces, omega, &mut chain, &mut out);
    out
}

fn check_guard<F: Field>(d: &DimVector) -> Result<()> {
    let q = field_q::<F>()?;
    let w = d.weight();
    let ok = match q {
        2 => w <= 4,
        3 => w <= 2,
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::SizeGuard(format!("census over F_{} does not accept total weight {}", q, w)))
    }
}

/// Every symplectic flag tuple with dimension vector `d`, each once.
pub fn enumerate_symplectic_tuples<F: Field>(d: &DimVector) -> Result<Vec<FlagObject<F>>> {
    validate_symmetric(d)?;
    check_guard::<F>(d)?;
    let m = d.weight() as usize;
    let omega = standard_form::<F>(m);
    let subspaces = all_subspaces::<F>(m);
    let per_flag: Vec<Vec<Flag<F>>> = d.comps().iter().map(|c| isotropic_flags(c, &subspaces, &omega)).collect();
    let total = per_flag.iter().try_fold(1usize, |acc, v| acc.checked_mul(v.len()).filter(|&t| t <= MAX_TUPLES));
    if total.is_none() {
        return Err(Error::SizeGuard(format!("more than {} tuples", MAX_TUPLES)));
    }
    let mut out = Vec::new();
    crate::classifier::cartesian(&per_flag, &mut |flags: &[Flag<F>]| {
        out.push(FlagObject::new(m, flags.to_vec()).expect("flags share the ambient space"));
    });
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub tuples: usize,
    pub orbits: usize,
    pub runtime_ms: u128,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Orbits of `Sp(F)` on the symplectic tuples of `d`, by union-find over the
/// action of the generators.
pub fn orbit_census_over<F: Field>(d: &DimVector) -> Result<Census> {
    let start = Instant::now();
    let tuples = enumerate_symplectic_tuples::<F>(d)?;
    let index: HashMap<&FlagObject<F>, usize> = tuples.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let generators = sp_generators::<F>(d.weight() as usize);
    let mut parent: Vec<usize> = (0..tuples.len()).collect();
    for g in &generators {
        let images: Vec<usize> = tuples
            .par_iter()
            .map(|t| *index.get(&t.transform(g)).expect("the action preserves the tuple set"))
            .collect();
        for (i, j) in images.into_iter().enumerate() {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let orbits = (0..tuples.len()).filter(|&i| find(&mut parent, i) == i).count();
    Ok(Census { tuples: tuples.len(), orbits, runtime_ms: start.elapsed().as_millis() })
}

/// Dispatches on the prime `q`.
pub fn orbit_census(d: &DimVector, q: u32) -> Result<Census> {
    match q {
        2 => orbit_census_over::<F2>(d),
        3 => orbit_census_over::<F3>(d),
        _ => Err(Error::SizeGuard(format!("census supports q = 2 or 3, got {}", q))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flagobj::is_symplectic_matrix;

    fn dv(s: &str) -> DimVector {
        s.parse().unwrap()
    }

    #[test]
    fn group_orders() {
        assert_eq!(sp_group::<F2>(2).unwrap().order, 6);
        assert_eq!(sp_group::<F3>(2).unwrap().order, 24);
        let g = sp_group::<F2>(4).unwrap();
        assert_eq!(g.order, 720);
        assert!(g.elements.iter().all(is_symplectic_matrix));
    }

    #[test]
    fn group_is_closed() {
        let g = sp_group::<F3>(2).unwrap();
        let set: HashSet<_> = g.elements.iter().cloned().collect();
        for a in &g.elements {
            assert!(set.contains(&a.inverse().unwrap()));
            for b in g.elements.iter().take(5) {
                assert!(set.contains(&a.mul(b)));
            }
        }
    }

    #[test]
    fn subspace_counts() {
        let s = all_subspaces::<F2>(4);
        let counts: Vec<usize> = s.iter().map(Vec::len).collect();
        assert_eq!(counts, vec![1, 15, 35, 15, 1]);
        assert_eq!(all_subspaces::<F3>(2)[1].len(), 4);
    }

    #[test]
    fn tuple_counts() {
        assert_eq!(enumerate_symplectic_tuples::<F2>(&dv("1,1;1,1;1,1")).unwrap().len(), 27);
        assert_eq!(enumerate_symplectic_tuples::<F2>(&dv("2,2")).unwrap().len(), 15);
        assert_eq!(enumerate_symplectic_tuples::<F2>(&dv("2;2;2")).unwrap().len(), 1);
        // every line is isotropic: (q^4 - 1)/(q - 1)
        assert_eq!(enumerate_symplectic_tuples::<F2>(&dv("1,2,1")).unwrap().len(), 15);
        for t in enumerate_symplectic_tuples::<F2>(&dv("2,2;1,1,1,1")).unwrap() {
            assert!(t.is_symplectic());
        }
    }

    #[test]
    fn small_censuses() {
        assert_eq!(orbit_census(&dv("1,1;1,1;1,1"), 2).unwrap().orbits, 5);
        // over F_3 the generic triple of distinct points splits in two
        assert_eq!(orbit_census(&dv("1,1;1,1;1,1"), 3).unwrap().orbits, 6);
        assert_eq!(orbit_census(&dv("2;2;2"), 2).unwrap().orbits, 1);
        assert!(matches!(orbit_census(&dv("3,3;3,3;3,3"), 2), Err(Error::SizeGuard(_))));
    }
}
