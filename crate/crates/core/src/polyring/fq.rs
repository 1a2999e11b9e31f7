//! Finite fields F_p and F_q = F_p[t]/(g), and dense polynomials over them.

use std::cmp::Ordering;
use std::fmt::{self, Debug};

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use rand::Rng;

use super::zpoly::DensePolyZ;
use crate::error::{Error, Result};

/// Arithmetic of a finite field. Elements are plain values; the field
/// object carries the modulus.
pub trait FiniteField: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Debug + Send + Sync;

    fn characteristic(&self) -> u64;
    /// Degree over the prime field.
    fn extension_degree(&self) -> usize;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_u64(&self, v: u64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    /// Canonical total order used to sort factorizations.
    fn cmp_elem(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering;

    fn order(&self) -> BigUint {
        BigUint::from(self.characteristic()).pow(self.extension_degree() as u32)
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, e: &BigUint) -> Self::Elem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    /// Inverse of Frobenius: the unique `b` with `b^p = a`.
    fn pth_root(&self, a: &Self::Elem) -> Self::Elem {
        let k = self.extension_degree();
        if k == 1 {
            return a.clone();
        }
        let e = BigUint::from(self.characteristic()).pow(k as u32 - 1);
        self.pow(a, &e)
    }
}

/// The prime field F_p with `p < 2^63`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// The caller certifies that `p` is prime.
    pub fn new(p: u64) -> Result<Self> {
        if p < 2 || p >= 1 << 63 {
            return Err(Error::InvalidPrime(p.to_string()));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn reduce_bigint(&self, v: &BigInt) -> u64 {
        let r = v % BigInt::from(self.p);
        let r = if r < BigInt::zero() {
            r + BigInt::from(self.p)
        } else {
            r
        };
        r.to_u64().expect("reduced residue fits")
    }

    /// Coefficientwise reduction of an integer polynomial.
    pub fn reduce_poly(&self, f: &DensePolyZ) -> FqPoly<u64> {
        FqPoly::new(
            f.coeffs().iter().map(|c| self.reduce_bigint(c)).collect(),
            self,
        )
    }

    /// Lift to integer coefficients in `[0, p)`.
    pub fn lift_poly(&self, f: &FqPoly<u64>) -> DensePolyZ {
        DensePolyZ::new(f.coeffs().iter().map(|&c| BigInt::from(c)).collect())
    }
}

impl FiniteField for PrimeField {
    type Elem = u64;

    fn characteristic(&self) -> u64 {
        self.p
    }
    fn extension_degree(&self) -> usize {
        1
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_u64(&self, v: u64) -> u64 {
        v % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        let (mut r0, mut r1) = (self.p as i128, *a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Some(t0.rem_euclid(self.p as i128) as u64)
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn cmp_elem(&self, a: &u64, b: &u64) -> Ordering {
        a.cmp(b)
    }
}

/// F_q = F_p[t]/(modulus) with a monic irreducible modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FqField {
    base: PrimeField,
    modulus: FqPoly<u64>,
}

impl FqField {
    /// Builds the field, verifying irreducibility of `modulus` over F_p.
    pub fn new(p: u64, modulus: FqPoly<u64>) -> Result<Self> {
        let base = PrimeField::new(p)?;
        if modulus.degree().unwrap_or(0) == 0 || !base.is_one(modulus.leading().unwrap()) {
            return Err(Error::ReducibleModulus(p));
        }
        if !crate::ffactor::is_irreducible(&base, &modulus)? {
            return Err(Error::ReducibleModulus(p));
        }
        Ok(FqField { base, modulus })
    }

    /// F_p presented as F_p[t]/(t).
    pub fn prime(p: u64) -> Result<Self> {
        let base = PrimeField::new(p)?;
        Ok(FqField {
            base,
            modulus: FqPoly::from_coeffs(vec![0, 1]),
        })
    }

    /// The residue field Z[x]/(p, φ) of an integer polynomial φ that is
    /// irreducible mod p.
    pub fn residue_field(p: u64, phi: &DensePolyZ) -> Result<Self> {
        let base = PrimeField::new(p)?;
        Self::new(p, base.reduce_poly(phi))
    }

    pub fn base(&self) -> &PrimeField {
        &self.base
    }

    pub fn modulus(&self) -> &FqPoly<u64> {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }

    /// Image of an F_p polynomial in t.
    pub fn elem_from_poly(&self, a: &FqPoly<u64>) -> FqPoly<u64> {
        self.base
            .poly_rem(a, &self.modulus)
            .expect("modulus nonzero")
    }

    /// Image of an integer polynomial in x under Z[x] -> F_q.
    pub fn elem_from_zpoly(&self, a: &DensePolyZ) -> FqPoly<u64> {
        self.elem_from_poly(&self.base.reduce_poly(a))
    }
}

impl FiniteField for FqField {
    type Elem = FqPoly<u64>;

    fn characteristic(&self) -> u64 {
        self.base.p
    }
    fn extension_degree(&self) -> usize {
        self.degree()
    }
    fn zero(&self) -> FqPoly<u64> {
        FqPoly::zero()
    }
    fn one(&self) -> FqPoly<u64> {
        FqPoly::from_coeffs(vec![1])
    }
    fn from_u64(&self, v: u64) -> FqPoly<u64> {
        FqPoly::from_coeffs(vec![v % self.base.p])
    }
    fn is_zero(&self, a: &FqPoly<u64>) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &FqPoly<u64>, b: &FqPoly<u64>) -> FqPoly<u64> {
        self.base.poly_add(a, b)
    }
    fn sub(&self, a: &FqPoly<u64>, b: &FqPoly<u64>) -> FqPoly<u64> {
        self.base.poly_sub(a, b)
    }
    fn neg(&self, a: &FqPoly<u64>) -> FqPoly<u64> {
        self.base.poly_neg(a)
    }
    fn mul(&self, a: &FqPoly<u64>, b: &FqPoly<u64>) -> FqPoly<u64> {
        self.elem_from_poly(&self.base.poly_mul(a, b))
    }
    fn inv(&self, a: &FqPoly<u64>) -> Option<FqPoly<u64>> {
        if a.is_zero() {
            return None;
        }
        let (g, s, _) = self.base.poly_xgcd(a, &self.modulus);
        debug_assert_eq!(g.degree(), Some(0));
        Some(self.elem_from_poly(&s))
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FqPoly<u64> {
        FqPoly::new(
            (0..self.degree()).map(|_| self.base.random(rng)).collect(),
            &self.base,
        )
    }
    fn cmp_elem(&self, a: &FqPoly<u64>, b: &FqPoly<u64>) -> Ordering {
        self.base.poly_cmp(a, b)
    }
}

/// Dense polynomial over a finite field, constant term first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FqPoly<E> {
    coeffs: Vec<E>,
}

impl<E: Clone + PartialEq> FqPoly<E> {
    pub fn new<F: FiniteField<Elem = E>>(mut coeffs: Vec<E>, field: &F) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        FqPoly { coeffs }
    }

    pub fn zero() -> Self {
        FqPoly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }
}

impl FqPoly<u64> {
    /// F_p coefficients; the caller guarantees they are reduced.
    pub fn from_coeffs(mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FqPoly { coeffs }
    }
}

impl<E: Debug> Debug for FqPoly<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

/// Polynomial arithmetic over any [`FiniteField`].
pub trait PolyArith: FiniteField {
    fn poly_from(&self, coeffs: Vec<Self::Elem>) -> FqPoly<Self::Elem> {
        FqPoly::new(coeffs, self)
    }

    fn poly_one(&self) -> FqPoly<Self::Elem> {
        FqPoly::new(vec![self.one()], self)
    }

    /// The indeterminate.
    fn poly_x(&self) -> FqPoly<Self::Elem> {
        FqPoly::new(vec![self.zero(), self.one()], self)
    }

    fn poly_add(&self, a: &FqPoly<Self::Elem>, b: &FqPoly<Self::Elem>) -> FqPoly<Self::Elem> {
        let n = a.coeffs.len().max(b.coeffs.len());
        let z = self.zero();
        let coeffs = (0..n)
            .map(|i| self.add(a.coeffs.get(i).unwrap_or(&z), b.coeffs.get(i).unwrap_or(&z)))
            .collect();
        FqPoly::new(coeffs, self)
    }

    fn poly_sub(&self, a: &FqPoly<Self::Elem>, b: &FqPoly<Self::Elem>) -> FqPoly<Self::Elem> {
        let n = a.coeffs.len().max(b.coeffs.len());
        let z = self.zero();
        let coeffs = (0..n)
            .map(|i| self.sub(a.coeffs.get(i).unwrap_or(&z), b.coeffs.get(i).unwrap_or(&z)))
            .collect();
        FqPoly::new(coeffs, self)
    }

    fn poly_neg(&self, a: &FqPoly<Self::Elem>) -> FqPoly<Self::Elem> {
        FqPoly::new(a.coeffs.iter().map(|c| self.neg(c)).collect(), self)
    }

    fn poly_scale(&self, a: &FqPoly<Self::Elem>, k: &Self::Elem) -> FqPoly<Self::Elem> {
        FqPoly::new(a.coeffs.iter().map(|c| self.mul(c, k)).collect(), self)
    }

    fn poly_mul(&self, a: &FqPoly<Self::Elem>, b: &FqPoly<Self::Elem>) -> FqPoly<Self::Elem> {
        if a.is_zero() || b.is_zero() {
            return FqPoly::zero();
        }
        let mut out = vec![self.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if self.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                out[i + j] = self.add(&out[i + j], &self.mul(x, y));
            }
        }
        FqPoly::new(out, self)
    }

    fn poly_divrem(
        &self,
        a: &FqPoly<Self::Elem>,
        b: &FqPoly<Self::Elem>,
    ) -> Result<(FqPoly<Self::Elem>, FqPoly<Self::Elem>)> {
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let inv_lc = self
            .inv(b.leading().unwrap())
            .expect("nonzero leading coefficient");
        let Some(da) = a.degree() else {
            return Ok((FqPoly::zero(), FqPoly::zero()));
        };
        if da < db {
            return Ok((FqPoly::zero(), a.clone()));
        }
        let mut rem = a.coeffs.clone();
        let mut quot = vec![self.zero(); da - db + 1];
        for k in (0..=da - db).rev() {
            let top = &rem[k + db];
            if self.is_zero(top) {
                continue;
            }
            let q = self.mul(top, &inv_lc);
            for (j, d) in b.coeffs.iter().enumerate() {
                rem[k + j] = self.sub(&rem[k + j], &self.mul(&q, d));
            }
            quot[k] = q;
        }
        rem.truncate(db);
        Ok((FqPoly::new(quot, self), FqPoly::new(rem, self)))
    }

    fn poly_rem(
        &self,
        a: &FqPoly<Self::Elem>,
        b: &FqPoly<Self::Elem>,
    ) -> Result<FqPoly<Self::Elem>> {
        Ok(self.poly_divrem(a, b)?.1)
    }

    fn poly_monic(&self, a: &FqPoly<Self::Elem>) -> FqPoly<Self::Elem> {
        match a.leading() {
            None => FqPoly::zero(),
            Some(lc) => self.poly_scale(a, &self.inv(lc).unwrap()),
        }
    }

    /// Monic gcd; gcd(0, 0) = 0.
    fn poly_gcd(&self, a: &FqPoly<Self::Elem>, b: &FqPoly<Self::Elem>) -> FqPoly<Self::Elem> {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = self.poly_rem(&x, &y).expect("nonzero divisor");
            x = y;
            y = r;
        }
        self.poly_monic(&x)
    }

    /// Returns `(g, s, t)` with `g = s a + t b` monic.
    fn poly_xgcd(
        &self,
        a: &FqPoly<Self::Elem>,
        b: &FqPoly<Self::Elem>,
    ) -> (FqPoly<Self::Elem>, FqPoly<Self::Elem>, FqPoly<Self::Elem>) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.poly_one(), FqPoly::zero());
        let (mut t0, mut t1) = (FqPoly::zero(), self.poly_one());
        while !r1.is_zero() {
            let (q, r) = self.poly_divrem(&r0, &r1).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s = self.poly_sub(&s0, &self.poly_mul(&q, &s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = self.poly_sub(&t0, &self.poly_mul(&q, &t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading() {
            None => (r0, s0, t0),
            Some(lc) => {
                let k = self.inv(lc).unwrap();
                (
                    self.poly_scale(&r0, &k),
                    self.poly_scale(&s0, &k),
                    self.poly_scale(&t0, &k),
                )
            }
        }
    }

    fn poly_derivative(&self, a: &FqPoly<Self::Elem>) -> FqPoly<Self::Elem> {
        let p = self.characteristic();
        let coeffs = a
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| self.mul(c, &self.from_u64((i as u64) % p)))
            .collect();
        FqPoly::new(coeffs, self)
    }

    fn poly_eval(&self, a: &FqPoly<Self::Elem>, x: &Self::Elem) -> Self::Elem {
        a.coeffs
            .iter()
            .rev()
            .fold(self.zero(), |acc, c| self.add(&self.mul(&acc, x), c))
    }

    fn poly_pow(&self, a: &FqPoly<Self::Elem>, e: u64) -> FqPoly<Self::Elem> {
        let mut acc = self.poly_one();
        for i in (0..64 - e.leading_zeros()).rev() {
            acc = self.poly_mul(&acc, &acc);
            if (e >> i) & 1 == 1 {
                acc = self.poly_mul(&acc, a);
            }
        }
        acc
    }

    /// `a^e mod m`.
    fn poly_powmod(
        &self,
        a: &FqPoly<Self::Elem>,
        e: &BigUint,
        m: &FqPoly<Self::Elem>,
    ) -> Result<FqPoly<Self::Elem>> {
        let base = self.poly_rem(a, m)?;
        let mut acc = self.poly_rem(&self.poly_one(), m)?;
        for i in (0..e.bits()).rev() {
            acc = self.poly_rem(&self.poly_mul(&acc, &acc), m)?;
            if e.bit(i) {
                acc = self.poly_rem(&self.poly_mul(&acc, &base), m)?;
            }
        }
        Ok(acc)
    }

    fn poly_mulmod(
        &self,
        a: &FqPoly<Self::Elem>,
        b: &FqPoly<Self::Elem>,
        m: &FqPoly<Self::Elem>,
    ) -> Result<FqPoly<Self::Elem>> {
        self.poly_rem(&self.poly_mul(a, b), m)
    }

    /// Canonical order: degree first, then coefficients from the top down.
    fn poly_cmp(&self, a: &FqPoly<Self::Elem>, b: &FqPoly<Self::Elem>) -> Ordering {
        a.coeffs.len().cmp(&b.coeffs.len()).then_with(|| {
            for (x, y) in a.coeffs.iter().rev().zip(b.coeffs.iter().rev()) {
                match self.cmp_elem(x, y) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl<F: FiniteField> PolyArith for F {}

/// Coefficientwise reduction of `F` to F_p.
pub fn reduce_mod(f: &DensePolyZ, p: u64) -> Result<FqPoly<u64>> {
    Ok(PrimeField::new(p)?.reduce_poly(f))
}
