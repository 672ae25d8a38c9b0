use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{solve, Field, Matrix, Q};

/// Univariate polynomial, coefficients lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `t`.
    pub fn t() -> Self {
        Poly::new(vec![F::zero(), F::one()])
    }

    /// `(t - r)^k`.
    pub fn linear_power(r: &F, k: usize) -> Self {
        let lin = Poly::new(vec![r.neg(), F::one()]);
        let mut p = Poly::constant(F::one());
        for _ in 0..k {
            p = p.mul(&lin);
        }
        p
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has no degree.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Poly<F>) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = F::zero();
        let c = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&z).add(other.coeffs.get(i).unwrap_or(&z)))
            .collect();
        Poly::new(c)
    }

    pub fn sub(&self, other: &Poly<F>) -> Self {
        self.add(&other.scale(&F::one().neg()))
    }

    pub fn scale(&self, c: &F) -> Self {
        Poly::new(self.coeffs.iter().map(|x| x.mul(c)).collect())
    }

    pub fn mul(&self, other: &Poly<F>) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![F::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] = c[i + j].add(&a.mul(b));
            }
        }
        Poly::new(c)
    }

    /// Quotient and remainder. Panics on division by zero.
    pub fn divrem(&self, d: &Poly<F>) -> (Poly<F>, Poly<F>) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead_inv = d.leading().unwrap().inv();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![F::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = r[i + dd].mul(&lead_inv);
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[i + j] = r[i + j].sub(&c.mul(dc));
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.inv()),
            None => Poly::zero(),
        }
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c.mul(&F::from_i64(i as i64))).collect(),
        )
    }

    /// Monic gcd together with Bezout cofactors: `u*self + v*other = g`.
    pub fn ext_gcd(&self, other: &Poly<F>) -> (Poly<F>, Poly<F>, Poly<F>) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::constant(F::one()), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::constant(F::one()));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.leading().cloned() {
            Some(l) => {
                let li = l.inv();
                (r0.scale(&li), s0.scale(&li), t0.scale(&li))
            }
            None => (r0, s0, t0),
        }
    }

    pub fn gcd(&self, other: &Poly<F>) -> Poly<F> {
        self.ext_gcd(other).0
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs.iter().rev().fold(F::zero(), |acc, c| acc.mul(x).add(c))
    }

    /// Evaluates at a square matrix by Horner's rule.
    pub fn eval_matrix(&self, a: &Matrix<F>) -> Matrix<F> {
        let n = a.nrows();
        let mut acc = Matrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(a);
            if !c.is_zero() {
                acc.add_scaled(c, &Matrix::identity(n));
            }
        }
        acc
    }

    /// Multiplicity of `r` as a root.
    pub fn root_multiplicity(&self, r: &F) -> usize {
        let lin = Poly::new(vec![r.neg(), F::one()]);
        let mut p = self.clone();
        let mut k = 0;
        while !p.is_zero() {
            let (q, rem) = p.divrem(&lin);
            if !rem.is_zero() {
                break;
            }
            p = q;
            k += 1;
        }
        k
    }
}

/// Minimal polynomial of a square matrix, monic.
pub fn min_poly<F: Field>(a: &Matrix<F>) -> Poly<F> {
    let n = a.nrows();
    let mut powers: Vec<Vec<F>> = vec![Matrix::<F>::identity(n).flatten()];
    let mut cur = Matrix::identity(n);
    loop {
        cur = cur.mul(a);
        let target = cur.flatten();
        let k = powers.len();
        // columns are the previous powers
        let m = Matrix::from_fn(n * n, k, |i, j| powers[j][i].clone());
        if let Some(sol) = solve(&m, &target) {
            let mut c: Vec<F> = sol.particular.iter().map(|x| x.neg()).collect();
            c.push(F::one());
            return Poly::new(c);
        }
        powers.push(target);
    }
}

const DIVISOR_LIMIT: u64 = 1_000_000_000_000;

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

impl Poly<Q> {
    /// Distinct rational roots, found via the rational root theorem on the
    /// square-free part. Candidates are only generated when the relevant
    /// integer coefficients are below a fixed bound; larger polynomials may
    /// have roots that are not reported (zero is always detected).
    pub fn rational_roots(&self) -> Vec<Q> {
        let mut roots = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return roots;
        }
        let sqfree = {
            let g = self.gcd(&self.derivative());
            self.divrem(&g).0
        };
        let mut p = sqfree;
        if p.coeffs[0].is_zero() {
            roots.push(Q::zero());
            p = Poly::new(p.coeffs[1..].to_vec());
        }
        if p.degree().unwrap_or(0) == 0 {
            return roots;
        }
        // clear denominators
        let lcm = p.coeffs.iter().fold(BigInt::from(1), |acc, c| acc.lcm(&c.denom()));
        let ints: Vec<BigInt> =
            p.coeffs.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
        let c0 = ints[0].abs();
        let cl = ints.last().unwrap().abs();
        let (Some(c0), Some(cl)) = (c0.to_u64(), cl.to_u64()) else {
            return roots;
        };
        if c0 > DIVISOR_LIMIT || cl > DIVISOR_LIMIT || c0.is_zero() {
            return roots;
        }
        let num = divisors(c0);
        let den = divisors(cl);
        let mut seen = std::collections::HashSet::new();
        for &a in &num {
            for &b in &den {
                if a.gcd(&b) != 1 {
                    continue;
                }
                for s in [1i64, -1] {
                    let cand = Q::from_big(num_rational::BigRational::new(
                        BigInt::from(a) * BigInt::from(s),
                        BigInt::from(b),
                    ));
                    if seen.insert(cand.clone()) && p.eval(&cand).is_zero() {
                        roots.push(cand);
                    }
                }
            }
        }
        roots
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(c: &[i64]) -> Poly<Q> {
        Poly::new(c.iter().map(|&x| Q::from_i64(x)).collect())
    }

    #[test]
    fn division_and_gcd() {
        let a = qp(&[-1, 0, 1]); // t^2 - 1
        let b = qp(&[1, 1]); // t + 1
        let (q, r) = a.divrem(&b);
        assert_eq!(q, qp(&[-1, 1]));
        assert!(r.is_zero());
        let (g, u, v) = qp(&[-1, 1]).ext_gcd(&qp(&[-2, 1]));
        assert_eq!(g, qp(&[1]));
        assert_eq!(u.mul(&qp(&[-1, 1])).add(&v.mul(&qp(&[-2, 1]))), g);
    }

    #[test]
    fn roots() {
        // (2t - 1)(t + 3)^2 t
        let p = qp(&[-1, 2]).mul(&qp(&[3, 1])).mul(&qp(&[3, 1])).mul(&qp(&[0, 1]));
        let mut r = p.rational_roots();
        r.sort();
        assert_eq!(r, vec![Q::from_i64(-3), Q::zero(), Q::new(1, 2)]);
        assert_eq!(p.root_multiplicity(&Q::from_i64(-3)), 2);
        assert!(qp(&[1, 0, 1]).rational_roots().is_empty());
    }

    #[test]
    fn minimal_polynomials() {
        let a = Matrix::<Q>::from_i64_rows(&[vec![2, 1, 0], vec![0, 2, 0], vec![0, 0, 2]]);
        assert_eq!(min_poly(&a), qp(&[4, -4, 1]));
        assert!(min_poly(&a).eval_matrix(&a).is_zero());
        let e = Matrix::<Q>::from_i64_rows(&[vec![1, 0], vec![0, 0]]);
        assert_eq!(min_poly(&e), qp(&[0, -1, 1]));
    }
}
