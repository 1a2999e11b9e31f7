//! Factorization over finite fields: squarefree decomposition,
//! distinct-degree splitting and Cantor–Zassenhaus equal-degree splitting.
//!
//! Randomness enters only through an explicit seed, and the output is put in
//! canonical order, so results do not depend on the seed.

use num_bigint::BigUint;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactnum::prime_divisors_u64;
use crate::polyring::{FiniteField, FqPoly, PolyArith};

/// `unit * Π poly^multiplicity`, factors monic irreducible and sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FqFactorization<E> {
    pub unit: E,
    pub factors: Vec<(FqPoly<E>, u64)>,
}

impl<E: Clone + PartialEq + Eq> FqFactorization<E> {
    pub fn expand<F: FiniteField<Elem = E>>(&self, field: &F) -> FqPoly<E> {
        let mut acc = field.poly_from(vec![self.unit.clone()]);
        for (g, m) in &self.factors {
            acc = field.poly_mul(&acc, &field.poly_pow(g, *m));
        }
        acc
    }

    /// Multiplicity of a monic irreducible `g`, zero if absent.
    pub fn multiplicity_of(&self, g: &FqPoly<E>) -> u64 {
        self.factors
            .iter()
            .find(|(h, _)| h == g)
            .map_or(0, |(_, m)| *m)
    }
}

fn nonconstant<E: Clone + PartialEq>(g: &FqPoly<E>) -> Result<usize> {
    match g.degree() {
        None => Err(Error::ZeroInput("polynomial")),
        Some(0) => Err(Error::DegreeTooSmall("constant polynomial")),
        Some(d) => Ok(d),
    }
}

/// True iff `gcd(G, G')` is constant.
pub fn is_separable<F: FiniteField>(field: &F, g: &FqPoly<F::Elem>) -> Result<bool> {
    if g.is_zero() {
        return Err(Error::ZeroInput("is_separable"));
    }
    let d = field.poly_derivative(g);
    Ok(field.poly_gcd(g, &d).degree() == Some(0))
}

/// `h^q mod m`.
fn frobenius<F: FiniteField>(
    field: &F,
    h: &FqPoly<F::Elem>,
    m: &FqPoly<F::Elem>,
) -> Result<FqPoly<F::Elem>> {
    field.poly_powmod(h, &field.order(), m)
}

/// Rabin's irreducibility test.
pub fn is_irreducible<F: FiniteField>(field: &F, g: &FqPoly<F::Elem>) -> Result<bool> {
    let n = nonconstant(g)?;
    if n == 1 {
        return Ok(true);
    }
    let g = field.poly_monic(g);
    let x = field.poly_x();
    let checkpoints: Vec<usize> = prime_divisors_u64(n as u64)
        .into_iter()
        .map(|r| n / r as usize)
        .collect();
    let mut h = x.clone();
    for k in 1..=n {
        h = frobenius(field, &h, &g)?;
        if checkpoints.contains(&k) {
            let diff = field.poly_sub(&h, &x);
            if field.poly_gcd(&g, &diff).degree() != Some(0) {
                return Ok(false);
            }
        }
    }
    Ok(field.poly_sub(&h, &x).is_zero())
}

/// Squarefree decomposition of a monic polynomial: pairs `(s_i, i)` with
/// pairwise coprime squarefree `s_i` and `g = Π s_i^i`.
pub fn squarefree_decomposition<F: FiniteField>(
    field: &F,
    g: &FqPoly<F::Elem>,
) -> Result<Vec<(FqPoly<F::Elem>, u64)>> {
    let p = field.characteristic();
    let mut out = Vec::new();
    let mut c = field.poly_gcd(g, &field.poly_derivative(g));
    let mut w = field.poly_divrem(g, &c)?.0;
    let mut i = 1u64;
    while w.degree().unwrap_or(0) > 0 {
        let y = field.poly_gcd(&w, &c);
        let z = field.poly_divrem(&w, &y)?.0;
        if z.degree().unwrap_or(0) > 0 {
            out.push((field.poly_monic(&z), i));
        }
        i += 1;
        w = y;
        c = field.poly_divrem(&c, &w)?.0;
    }
    if c.degree().unwrap_or(0) > 0 {
        // c is a p-th power: c(x) = Σ c_{kp} x^{kp}
        let root: Vec<F::Elem> = c
            .coeffs()
            .iter()
            .step_by(p as usize)
            .map(|a| field.pth_root(a))
            .collect();
        let root = field.poly_from(root);
        for (s, m) in squarefree_decomposition(field, &root)? {
            out.push((s, m * p));
        }
    }
    Ok(out)
}

/// Distinct-degree split of a monic squarefree polynomial into
/// `(product of all irreducible factors of degree d, d)`.
pub fn distinct_degree<F: FiniteField>(
    field: &F,
    g: &FqPoly<F::Elem>,
) -> Result<Vec<(FqPoly<F::Elem>, usize)>> {
    let mut out = Vec::new();
    let mut rest = g.clone();
    let x = field.poly_x();
    let mut h = x.clone();
    let mut d = 0;
    while rest.degree().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = frobenius(field, &h, &rest)?;
        let part = field.poly_gcd(&rest, &field.poly_sub(&h, &x));
        if part.degree().unwrap_or(0) > 0 {
            rest = field.poly_divrem(&rest, &part)?.0;
            h = field.poly_rem(&h, &rest)?;
            out.push((part, d));
        }
    }
    if let Some(dr) = rest.degree().filter(|&dr| dr > 0) {
        out.push((rest, dr));
    }
    Ok(out)
}

/// Splits a product of distinct irreducibles all of degree `d`.
pub fn equal_degree<F: FiniteField>(
    field: &F,
    g: &FqPoly<F::Elem>,
    d: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<FqPoly<F::Elem>>> {
    let n = nonconstant(g)?;
    if n == d {
        return Ok(vec![field.poly_monic(g)]);
    }
    let q = field.order();
    let p = field.characteristic();
    let one = field.poly_one();
    loop {
        let a = field.poly_from((0..n).map(|_| field.random(rng)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            // absolute trace of a into F_2, taken in F_q[x]/(g)
            let k = field.extension_degree() * d;
            let mut acc = a.clone();
            let mut term = a.clone();
            for _ in 1..k {
                term = field.poly_mulmod(&term, &term, g)?;
                acc = field.poly_add(&acc, &term);
            }
            acc
        } else {
            let e = (q.pow(d as u32) - BigUint::one()) >> 1;
            field.poly_sub(&field.poly_powmod(&a, &e, g)?, &one)
        };
        let split = field.poly_gcd(g, &b);
        let ds = split.degree().unwrap_or(0);
        if ds > 0 && ds < n {
            let other = field.poly_divrem(g, &split)?.0;
            let mut out = equal_degree(field, &split, d, rng)?;
            out.extend(equal_degree(field, &other, d, rng)?);
            return Ok(out);
        }
    }
}

/// Complete factorization of a nonconstant polynomial.
pub fn factor<F: FiniteField>(
    field: &F,
    g: &FqPoly<F::Elem>,
    seed: u64,
) -> Result<FqFactorization<F::Elem>> {
    nonconstant(g)?;
    let unit = g.leading().unwrap().clone();
    let monic = field.poly_monic(g);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors = Vec::new();
    for (part, mult) in squarefree_decomposition(field, &monic)? {
        for (block, d) in distinct_degree(field, &part)? {
            for f in equal_degree(field, &block, d, &mut rng)? {
                factors.push((f, mult));
            }
        }
    }
    factors.sort_by(|(a, _), (b, _)| field.poly_cmp(a, b));
    Ok(FqFactorization { unit, factors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{FqField, PrimeField};

    fn fp(c: &[u64]) -> FqPoly<u64> {
        FqPoly::from_coeffs(c.to_vec())
    }

    #[test]
    fn separability() {
        let f2 = PrimeField::new(2).unwrap();
        assert!(!is_separable(&f2, &fp(&[1, 0, 1])).unwrap());
        assert!(is_separable(&f2, &fp(&[1, 1])).unwrap());
        assert!(!is_separable(&f2, &fp(&[0, 1, 0, 1])).unwrap());
        assert!(is_separable(&f2, &FqPoly::zero()).is_err());
    }

    #[test]
    fn irreducibility() {
        let f2 = PrimeField::new(2).unwrap();
        assert!(is_irreducible(&f2, &fp(&[1, 1, 1])).unwrap());
        assert!(!is_irreducible(&f2, &fp(&[1, 0, 1])).unwrap());
        assert!(is_irreducible(&f2, &fp(&[1, 1, 0, 0, 1])).unwrap());
        // (x^2+x+1)^2 = x^4+x^2+1 has no roots but is reducible
        assert!(!is_irreducible(&f2, &fp(&[1, 0, 1, 0, 1])).unwrap());
        assert!(is_irreducible(&f2, &fp(&[1])).is_err());
    }

    #[test]
    fn factor_examples() {
        let f2 = PrimeField::new(2).unwrap();
        let mut x8p1 = vec![0u64; 9];
        x8p1[0] = 1;
        x8p1[8] = 1;
        let fac = factor(&f2, &fp(&x8p1), 1).unwrap();
        assert_eq!(fac.factors, vec![(fp(&[1, 1]), 8)]);

        let fac = factor(&f2, &fp(&[0, 0, 1, 1]), 1).unwrap();
        assert_eq!(fac.factors, vec![(fp(&[0, 1]), 2), (fp(&[1, 1]), 1)]);

        let fac = factor(&f2, &fp(&[1, 1, 1]), 1).unwrap();
        assert_eq!(fac.factors, vec![(fp(&[1, 1, 1]), 1)]);
    }

    #[test]
    fn factor_over_extension_field() {
        let f4 = FqField::new(2, fp(&[1, 1, 1])).unwrap();
        // x^2 + x + 1 splits over F_4 as (x + t)(x + t + 1)
        let g = f4.poly_from(vec![fp(&[1]), fp(&[1]), fp(&[1])]);
        let fac = factor(&f4, &g, 3).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert!(fac
            .factors
            .iter()
            .all(|(h, m)| h.degree() == Some(1) && *m == 1));
        assert_eq!(fac.expand(&f4), g);
    }

    #[test]
    fn factor_large_prime() {
        let f = PrimeField::new(1_000_003).unwrap();
        // (x - 5)(x - 7)(x^2 + 2) where -2 is a non-residue mod 1000003
        let g = f.poly_mul(
            &f.poly_mul(&fp(&[1_000_003 - 5, 1]), &fp(&[1_000_003 - 7, 1])),
            &fp(&[2, 0, 1]),
        );
        let fac = factor(&f, &g, 9).unwrap();
        assert_eq!(fac.expand(&f), g);
        assert!(fac.factors.len() >= 3);
    }
}
