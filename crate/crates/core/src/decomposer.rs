//! Hom and End spaces, Krull–Schmidt decomposition, isomorphism tests and
//! orbit equality for symplectic objects.

use rand::Rng;

use crate::catalog;
use crate::compositions::DimVector;
use crate::enumerator::OrbitFamily;
use crate::error::{Error, Result};
use crate::exactlin::{min_poly, Field, Matrix, Poly, Subspace, Q};
use crate::flagobj::{is_symplectic_matrix, FlagObject};

/// Number of random combinations tried before the exact isomorphism test.
pub const ISO_TRIALS: usize = 20;

/// Budget of candidate elements examined when looking for an idempotent.
pub const IDEMPOTENT_TRIALS: usize = 200;

/// Rows of an ordered basis adapted to the chain: the first `dim A_1` rows
/// span `A_1`, the first `dim A_2` rows span `A_2`, and so on. Also returns
/// the row ranges added at each step.
fn chain_basis<F: Field>(chain: &[Subspace<F>], n: usize) -> (Matrix<F>, Vec<std::ops::Range<usize>>) {
    let mut rows: Vec<Vec<F>> = Vec::with_capacity(n);
    let mut span = Subspace::zero(n);
    let mut steps = Vec::with_capacity(chain.len());
    for a in chain {
        let start = rows.len();
        for i in 0..a.dim() {
            let v = a.basis().row(i);
            if !span.contains_vector(v) {
                rows.push(v.to_vec());
                span = Subspace::from_rows(n, rows.clone()).expect("rows of length n");
            }
        }
        steps.push(start..rows.len());
    }
    (Matrix::from_rows(n, rows).expect("rows of length n"), steps)
}

fn check_shapes<F: Field>(x: &FlagObject<F>, y: &FlagObject<F>) -> Result<()> {
    if x.k() != y.k() {
        return Err(Error::ShapeMismatch(format!("{} flags vs {} flags", x.k(), y.k())));
    }
    for (f, g) in x.flags().iter().zip(y.flags()) {
        if f.len() != g.len() {
            return Err(Error::ShapeMismatch(format!(
                "flag lengths differ: {} vs {}",
                f.composition(),
                g.composition()
            )));
        }
    }
    Ok(())
}

/// Basis of all `f` with `A_i f ⊆ B_i` for every flag member.
///
/// One flag is used to fix adapted bases on both sides, which turns its
/// containments into a zero pattern; the other flags give linear equations on
/// the remaining entries.
pub fn hom_space<F: Field>(x: &FlagObject<F>, y: &FlagObject<F>) -> Result<Vec<Matrix<F>>> {
    check_shapes(x, y)?;
    let (n, m) = (x.ambient_dim(), y.ambient_dim());

    // the flag forcing the most zeros
    let forced = |j: usize| -> usize {
        let (f, g) = (&x.flags()[j], &y.flags()[j]);
        (1..=f.len()).map(|i| (f.member(i).dim() - f.member(i - 1).dim()) * (m - g.member(i).dim())).sum()
    };
    let b = (0..x.k()).max_by_key(|&j| (forced(j), std::cmp::Reverse(j))).unwrap();

    let (p, psteps) = chain_basis(x.flags()[b].chain(), n);
    let (qb, _) = chain_basis(y.flags()[b].chain(), m);
    let p_inv = p.inverse().expect("adapted basis is invertible");

    // free entries of G = P f Q^{-1}
    let mut free: Vec<(usize, usize)> = Vec::new();
    for (i, rng) in psteps.iter().enumerate() {
        let allowed = y.flags()[b].member(i).dim();
        for k in rng.clone() {
            for l in 0..allowed {
                free.push((k, l));
            }
        }
    }
    let nf = free.len();

    let mut eqs: Vec<Vec<F>> = Vec::new();
    for j in 0..x.k() {
        if j == b {
            continue;
        }
        let (f, g) = (&x.flags()[j], &y.flags()[j]);
        let (xb, xsteps) = chain_basis(f.chain(), n);
        for i in 1..f.len() {
            let bi = g.member(i);
            if bi.is_full() || xsteps[i].is_empty() {
                continue;
            }
            let w = bi.annihilator();
            let mm = qb.mul(&w.basis().transpose());
            for r in xsteps[i].clone() {
                let up = p_inv.vec_mul(xb.row(r));
                for c in 0..mm.ncols() {
                    let eq: Vec<F> = free.iter().map(|&(k, l)| up[k].mul(mm.get(l, c))).collect();
                    if eq.iter().any(|e| !e.is_zero()) {
                        eqs.push(eq);
                    }
                }
            }
        }
    }
    let null = if eqs.is_empty() {
        Matrix::identity(nf)
    } else {
        Matrix::from_rows(nf, eqs)?.nullspace()
    };

    let mut basis = Vec::with_capacity(null.nrows());
    for s in 0..null.nrows() {
        let mut g = Matrix::zeros(n, m);
        for (t, &(k, l)) in free.iter().enumerate() {
            g.set(k, l, null.get(s, t).clone());
        }
        basis.push(p_inv.mul(&g).mul(&qb));
    }
    Ok(basis)
}

pub fn end_algebra<F: Field>(x: &FlagObject<F>) -> Vec<Matrix<F>> {
    hom_space(x, x).expect("an object has the shape of itself")
}

/// True iff every flag member of `x` is mapped into the matching member of `y`.
pub fn is_morphism<F: Field>(f: &Matrix<F>, x: &FlagObject<F>, y: &FlagObject<F>) -> bool {
    x.flags().iter().zip(y.flags()).all(|(a, b)| {
        a.chain().iter().zip(b.chain()).all(|(u, v)| v.contains(&u.image(f)))
    })
}

fn trace_of_product(a: &Matrix<Q>, b: &Matrix<Q>) -> Q {
    let n = a.nrows();
    let mut s = Q::zero();
    for i in 0..n {
        for k in 0..n {
            let x = a.get(i, k);
            if x.is_zero() {
                continue;
            }
            let y = b.get(k, i);
            if !y.is_zero() {
                s = s.add(&x.mul(y));
            }
        }
    }
    s
}

/// Radical of a matrix algebra over Q: the kernel of the trace form.
pub fn radical(e: &[Matrix<Q>]) -> Vec<Matrix<Q>> {
    let d = e.len();
    if d == 0 {
        return Vec::new();
    }
    let t = Matrix::from_fn(d, d, |i, j| trace_of_product(&e[i], &e[j]));
    let null = t.nullspace();
    (0..null.nrows()).map(|r| combine(e, null.row(r))).collect()
}

fn combine<F: Field>(basis: &[Matrix<F>], coeffs: &[F]) -> Matrix<F> {
    let mut acc = Matrix::zeros(basis[0].nrows(), basis[0].ncols());
    for (b, c) in basis.iter().zip(coeffs) {
        acc.add_scaled(c, b);
    }
    acc
}

fn random_combination<F: Field, R: Rng>(basis: &[Matrix<F>], range: i64, rng: &mut R) -> Matrix<F> {
    let coeffs: Vec<F> = basis
        .iter()
        .map(|_| if rng.random_bool(0.6) { F::from_i64(rng.random_range(-range..=range)) } else { F::zero() })
        .collect();
    combine(basis, &coeffs)
}

/// `dim E - dim rad E`.
pub fn semisimple_dim(e: &[Matrix<Q>]) -> usize {
    e.len() - radical(e).len()
}

/// Tries to split `a` by a coprime factorization of its minimal polynomial.
fn idempotent_from(a: &Matrix<Q>) -> Option<Matrix<Q>> {
    let p = min_poly(a);
    if p.degree()? < 2 {
        return None;
    }
    let split = |g: Poly<Q>| -> Option<Matrix<Q>> {
        let (h, rem) = p.divrem(&g);
        debug_assert!(rem.is_zero());
        if h.degree()? == 0 || g.degree()? == 0 {
            return None;
        }
        let (one, _u, v) = g.ext_gcd(&h);
        if one.degree() != Some(0) {
            return None;
        }
        let e = v.mul(&h).eval_matrix(a);
        let ok = e.mul(&e) == e && !e.is_zero() && !e.is_identity();
        ok.then_some(e)
    };
    if let Some(r) = p.rational_roots().first() {
        let k = p.root_multiplicity(r);
        if let Some(e) = split(Poly::linear_power(r, k)) {
            return Some(e);
        }
    }
    // square-free factorization: parts of different multiplicity are coprime
    let parts = yun(&p);
    if parts.iter().filter(|(f, _)| f.degree().unwrap_or(0) > 0).count() >= 2 {
        let (f, k) = parts.iter().find(|(f, _)| f.degree().unwrap_or(0) > 0).unwrap();
        let mut g = Poly::constant(Q::one());
        for _ in 0..*k {
            g = g.mul(f);
        }
        if let Some(e) = split(g) {
            return Some(e);
        }
    }
    None
}

/// Square-free decomposition `p = Π f_i^i` of a monic polynomial over Q.
fn yun(p: &Poly<Q>) -> Vec<(Poly<Q>, usize)> {
    let mut out = Vec::new();
    let dp = p.derivative();
    let a0 = p.gcd(&dp);
    let mut b = p.divrem(&a0).0;
    let mut c = dp.divrem(&a0).0;
    let mut d = c.sub(&b.derivative());
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = b.gcd(&d);
        b = b.divrem(&a).0;
        c = d.divrem(&a).0;
        d = c.sub(&b.derivative());
        out.push((a.monic(), i));
        i += 1;
        if i > 64 {
            break;
        }
    }
    out
}

/// Searches `e` for an idempotent other than 0 and 1: basis elements, their
/// pairwise products, then random combinations.
pub fn find_splitting_idempotent<R: Rng>(e: &[Matrix<Q>], rng: &mut R) -> Option<Matrix<Q>> {
    if e.len() < 2 {
        return None;
    }
    for b in e {
        if let Some(i) = idempotent_from(b) {
            return Some(i);
        }
    }
    let mut budget = IDEMPOTENT_TRIALS;
    'pairs: for a in e {
        for b in e {
            if budget == 0 {
                break 'pairs;
            }
            budget -= 1;
            let ab = a.mul(b);
            if ab.is_zero() {
                continue;
            }
            if let Some(i) = idempotent_from(&ab) {
                return Some(i);
            }
        }
    }
    for t in 0..IDEMPOTENT_TRIALS {
        let a = random_combination(e, 1 + (t as i64) / 20, rng);
        if let Some(i) = idempotent_from(&a) {
            return Some(i);
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Indecomposability {
    Yes,
    No(Matrix<Q>),
    Unknown,
}

pub fn is_indecomposable<R: Rng>(x: &FlagObject<Q>, rng: &mut R) -> Indecomposability {
    let e = end_algebra(x);
    if semisimple_dim(&e) == 1 {
        return Indecomposability::Yes;
    }
    match find_splitting_idempotent(&e, rng) {
        Some(i) => Indecomposability::No(i),
        None => Indecomposability::Unknown,
    }
}

/// An indecomposable summand together with the basis (rows, in the
/// coordinates of the decomposed object) of the subspace it lives on.
#[derive(Clone, Debug)]
pub struct Piece {
    pub object: FlagObject<Q>,
    pub basis: Matrix<Q>,
}

/// Splits `x` into indecomposable summands.
pub fn decompose<R: Rng>(x: &FlagObject<Q>, rng: &mut R) -> Result<Vec<Piece>> {
    let mut out = Vec::new();
    let mut stack = vec![Piece { object: x.clone(), basis: Matrix::identity(x.ambient_dim()) }];
    while let Some(piece) = stack.pop() {
        let e = end_algebra(&piece.object);
        let ss = semisimple_dim(&e);
        if ss == 1 {
            out.push(piece);
            continue;
        }
        let Some(idem) = find_splitting_idempotent(&e, rng) else {
            return Err(Error::Undecided(piece.object.dim_vector().to_string(), ss));
        };
        let n = piece.object.ambient_dim();
        let comp = Matrix::identity(n).sub(&idem);
        for proj in [idem, comp] {
            let u = Subspace::row_space(&proj);
            let sub = piece.object.induced_subobject(&u)?;
            stack.push(Piece { object: sub, basis: u.basis().mul(&piece.basis) });
        }
    }
    // deterministic order: larger pieces first, then by dimension vector
    out.sort_by(|a, b| {
        b.object
            .ambient_dim()
            .cmp(&a.object.ambient_dim())
            .then_with(|| a.object.dim_vector().cmp(&b.object.dim_vector()))
    });
    Ok(out)
}

/// Decides isomorphism; on success returns an invertible intertwiner.
pub fn isomorphism<R: Rng>(x: &FlagObject<Q>, y: &FlagObject<Q>, rng: &mut R) -> Result<Option<Matrix<Q>>> {
    if x.dim_vector() != y.dim_vector() {
        return Ok(None);
    }
    let h = hom_space(x, y)?;
    if h.is_empty() {
        return Ok(None);
    }
    for t in 0..ISO_TRIALS {
        let f = random_combination(&h, 1 + (t as i64) / 4, rng);
        if f.is_invertible() {
            return Ok(Some(f));
        }
    }
    exact_isomorphism(x, y, &h, rng)
}

/// Largest Hom space searched exhaustively over a finite field.
pub const MAX_FINITE_HOM: u64 = 1 << 20;

/// Isomorphism over a finite field by running through every element of the
/// Hom space. With `symplectic` set, only intertwiners preserving the standard
/// form count, which decides equality of `Sp(F_q)`-orbits.
pub fn finite_field_isomorphism<F: Field>(
    x: &FlagObject<F>,
    y: &FlagObject<F>,
    symplectic: bool,
) -> Result<Option<Matrix<F>>> {
    let elems = F::elements().ok_or_else(|| Error::FieldMismatch { expected: "F_p".into(), found: F::tag().into() })?;
    if x.dim_vector() != y.dim_vector() {
        return Ok(None);
    }
    let h = hom_space(x, y)?;
    let q = elems.len() as u64;
    let total = q.checked_pow(h.len() as u32).filter(|&t| t <= MAX_FINITE_HOM);
    let total = total.ok_or_else(|| Error::SizeGuard(format!("Hom space of dimension {} over {}", h.len(), F::tag())))?;
    let n = x.ambient_dim();
    for code in 1..total {
        let mut f = Matrix::zeros(n, n);
        let mut c = code;
        for b in &h {
            let a = &elems[(c % q) as usize];
            c /= q;
            if !a.is_zero() {
                f = f.add(&b.scale(a));
            }
        }
        if f.is_invertible() && (!symplectic || is_symplectic_matrix(&f)) {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

pub fn are_isomorphic<R: Rng>(x: &FlagObject<Q>, y: &FlagObject<Q>, rng: &mut R) -> Result<bool> {
    Ok(isomorphism(x, y, rng)?.is_some())
}

/// Exact fallback. For indecomposable `x` the ideal of End(x) spanned by the
/// composites `x -> y -> x` is proper iff no composite of basis elements is
/// invertible; otherwise both sides are decomposed and matched piece by piece.
fn exact_isomorphism<R: Rng>(
    x: &FlagObject<Q>,
    y: &FlagObject<Q>,
    h: &[Matrix<Q>],
    rng: &mut R,
) -> Result<Option<Matrix<Q>>> {
    let ex = end_algebra(x);
    if semisimple_dim(&ex) == 1 {
        let back = hom_space(y, x)?;
        for f in h {
            for g in &back {
                if f.mul(g).is_invertible() {
                    return Ok(Some(f.clone()));
                }
            }
        }
        return Ok(None);
    }
    let px = decompose(x, rng)?;
    let py = decompose(y, rng)?;
    if px.len() != py.len() {
        return Ok(None);
    }
    let mut used = vec![false; py.len()];
    // block isomorphism assembled in the piece coordinates
    let sx = stack_bases(&px);
    let mut blocks: Vec<(usize, Matrix<Q>)> = Vec::with_capacity(px.len());
    for a in &px {
        let mut found = None;
        for (j, b) in py.iter().enumerate() {
            if used[j] || a.object.dim_vector() != b.object.dim_vector() {
                continue;
            }
            if let Some(f) = isomorphism(&a.object, &b.object, rng)? {
                found = Some((j, f));
                break;
            }
        }
        match found {
            Some((j, f)) => {
                used[j] = true;
                blocks.push((j, f));
            }
            None => return Ok(None),
        }
    }
    // x -> ⊕ pieces of x -> ⊕ pieces of y -> y
    let n = x.ambient_dim();
    let offsets_y = offsets(&py);
    let offsets_x = offsets(&px);
    let mut mid = Matrix::zeros(n, n);
    for (i, (j, f)) in blocks.iter().enumerate() {
        for r in 0..f.nrows() {
            for c in 0..f.ncols() {
                mid.set(offsets_x[i] + r, offsets_y[*j] + c, f.get(r, c).clone());
            }
        }
    }
    let sy = stack_bases(&py);
    let iso = sx.inverse().expect("pieces span").mul(&mid).mul(&sy);
    debug_assert!(is_morphism(&iso, x, y));
    Ok(Some(iso))
}

fn offsets(p: &[Piece]) -> Vec<usize> {
    let mut out = Vec::with_capacity(p.len());
    let mut s = 0;
    for piece in p {
        out.push(s);
        s += piece.object.ambient_dim();
    }
    out
}

fn stack_bases(p: &[Piece]) -> Matrix<Q> {
    let mut m = p[0].basis.clone();
    for piece in &p[1..] {
        m = m.vstack(&piece.basis);
    }
    m
}

/// An indecomposable summand of a symplectic object, as seen in the symplectic
/// category: either a self-dual indecomposable or a pair `I ⊕ I*`.
#[derive(Clone, Debug)]
pub struct SpPiece {
    /// Dimension vector of the summand (in the lengths of the input).
    pub e: DimVector,
    /// 1-based position of the matching label in its catalog row.
    pub label: usize,
    pub parts: Vec<Piece>,
}

/// Decomposes a symplectic object into symplectic indecomposables and names
/// each one by its catalog label.
pub fn sp_pieces<R: Rng>(x: &FlagObject<Q>, rng: &mut R) -> Result<Vec<SpPiece>> {
    if !x.is_symplectic() {
        return Err(Error::NotSymplectic);
    }
    if x.k() != 3 {
        return Err(Error::ShapeMismatch(format!("expected three flags, found {}", x.k())));
    }
    let pieces = decompose(x, rng)?;
    let mut used = vec![false; pieces.len()];
    let mut out = Vec::new();
    for i in 0..pieces.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let p = &pieces[i];
        let e = p.object.dim_vector();
        if let Some(label) = match_plain(&p.object, rng)? {
            out.push(SpPiece { e, label, parts: vec![p.clone()] });
            continue;
        }
        let dual = p.object.dual();
        let op = e.opposite();
        let mut partner = None;
        for j in (i + 1)..pieces.len() {
            if used[j] || pieces[j].object.dim_vector() != op {
                continue;
            }
            if are_isomorphic(&pieces[j].object, &dual, rng)? {
                partner = Some(j);
                break;
            }
        }
        let Some(j) = partner else {
            return Err(Error::UnmatchedPiece(e.to_string()));
        };
        used[j] = true;
        let s = e.add(&op)?;
        let label = match_sym(&p.object, &pieces[j].object, &s, rng)?;
        out.push(SpPiece { e: s, label, parts: vec![p.clone(), pieces[j].clone()] });
    }
    Ok(out)
}

/// Brings a piece of dimension within `s` into the coordinates of the catalog
/// row of `s`: drops the positions where `s` vanishes and permutes the flags.
fn to_row_coordinates(obj: &FlagObject<Q>, s: &DimVector, sigma: &[usize]) -> Result<FlagObject<Q>> {
    let e = obj.dim_vector();
    let comps = e
        .comps()
        .iter()
        .zip(s.comps())
        .map(|(c, t)| {
            let parts = t.nonzero_positions().iter().map(|&i| c.parts()[i]).collect();
            crate::compositions::Composition::new(parts)
        })
        .collect::<Result<Vec<_>>>()?;
    let target = DimVector::new(comps)?;
    Ok(obj.reshape(&target)?.permute_flags(sigma))
}

fn match_plain<R: Rng>(obj: &FlagObject<Q>, rng: &mut R) -> Result<Option<usize>> {
    let e = obj.dim_vector();
    if !e.is_symmetric() || !e.weight().is_multiple_of(2) {
        return Ok(None);
    }
    let Some((row, sigma)) = catalog::locate(&e) else {
        return Ok(None);
    };
    let local = to_row_coordinates(obj, &e, &sigma)?;
    for (idx, label) in catalog::rows()[row].labels.iter().enumerate() {
        if !label.is_plain() {
            continue;
        }
        let rep = catalog::representative(row, idx)?;
        if are_isomorphic(&local, rep, rng)? {
            return Ok(Some(idx + 1));
        }
    }
    Ok(None)
}

fn match_sym<R: Rng>(a: &FlagObject<Q>, b: &FlagObject<Q>, s: &DimVector, rng: &mut R) -> Result<usize> {
    let Some((row, sigma)) = catalog::locate(s) else {
        return Err(Error::UnmatchedPiece(s.to_string()));
    };
    let la = to_row_coordinates(a, s, &sigma)?;
    let lb = to_row_coordinates(b, s, &sigma)?;
    for (idx, label) in catalog::rows()[row].labels.iter().enumerate() {
        let Some(el) = label.sym_e() else { continue };
        let ind = catalog::gl_indecomposable(el)?;
        for cand in [&la, &lb] {
            if cand.dim_vector() == *el && are_isomorphic(cand, &ind, rng)? {
                return Ok(idx + 1);
            }
        }
    }
    Err(Error::UnmatchedPiece(s.to_string()))
}

/// The orbit family of a symplectic object.
pub fn sp_decompose<R: Rng>(x: &FlagObject<Q>, rng: &mut R) -> Result<OrbitFamily> {
    let mut fam = OrbitFamily::default();
    for p in sp_pieces(x, rng)? {
        fam.insert(p.e, p.label, 1);
    }
    Ok(fam)
}

/// Orbit equality of two symplectic objects of the same dimension vector:
/// their indecomposable summands agree as multisets up to isomorphism.
pub fn sp_orbit_equal<R: Rng>(x: &FlagObject<Q>, y: &FlagObject<Q>, rng: &mut R) -> Result<bool> {
    if !x.is_symplectic() || !y.is_symplectic() {
        return Err(Error::NotSymplectic);
    }
    if x.dim_vector() != y.dim_vector() {
        return Ok(false);
    }
    let px = decompose(x, rng)?;
    let py = decompose(y, rng)?;
    multisets_match(&px, &py, rng)
}

/// True iff the two lists of indecomposables agree up to isomorphism and order.
pub fn multisets_match<R: Rng>(a: &[Piece], b: &[Piece], rng: &mut R) -> Result<bool> {
    if a.len() != b.len() {
        return Ok(false);
    }
    let mut used = vec![false; b.len()];
    for p in a {
        let mut hit = false;
        for (j, q) in b.iter().enumerate() {
            if used[j] || p.object.dim_vector() != q.object.dim_vector() {
                continue;
            }
            if are_isomorphic(&p.object, &q.object, rng)? {
                used[j] = true;
                hit = true;
                break;
            }
        }
        if !hit {
            return Ok(false);
        }
    }
    Ok(true)
}
