use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{valp, Valuation};

/// Dense univariate polynomial over the integers; `coeffs[i]` is the
/// coefficient of `x^i`. The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct DensePolyZ {
    coeffs: Vec<BigInt>,
}

impl DensePolyZ {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        DensePolyZ { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        DensePolyZ { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::from_i64s(&[0, 1])
    }

    /// `c * x^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `x^n + a x^m + b`
    pub fn trinomial(n: usize, m: usize, a: &BigInt, b: &BigInt) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        coeffs[m] += a;
        coeffs[0] += b;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero above the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Minimum p-adic valuation over the coefficients.
    pub fn valp(&self, p: u64) -> Result<Valuation> {
        let mut best = Valuation::Infinity;
        for c in &self.coeffs {
            best = best.min(valp(p, c)?);
        }
        Ok(best)
    }

    /// Division with remainder by a monic divisor, exact over Z.
    pub fn divrem(&self, den: &DensePolyZ) -> Result<(DensePolyZ, DensePolyZ)> {
        let dd = den.degree().ok_or(Error::DivisionByZero)?;
        if !den.is_monic() {
            return Err(Error::NotMonic);
        }
        let Some(nd) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if nd < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let q = std::mem::take(&mut rem[k + dd]);
            if q.is_zero() {
                continue;
            }
            for (j, d) in den.coeffs[..dd].iter().enumerate() {
                rem[k + j] -= &q * d;
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Pseudo-remainder `lc(B)^(deg A - deg B + 1) A mod B`.
    fn pseudo_rem(&self, den: &DensePolyZ) -> DensePolyZ {
        let dd = den.degree().expect("nonzero divisor");
        let lc = den.leading().unwrap();
        let mut rem = self.clone();
        let mut extra = match self.degree() {
            Some(nd) if nd >= dd => nd - dd + 1,
            _ => return rem,
        };
        while let Some(nr) = rem.degree() {
            if nr < dd {
                break;
            }
            let shift = DensePolyZ::monomial(rem.leading().unwrap().clone(), nr - dd);
            rem = &rem.scale(lc) - &(&shift * den);
            extra -= 1;
        }
        if extra > 0 {
            rem = rem.scale(&lc.pow(extra as u32));
        }
        rem
    }

    fn exact_div_scalar(&self, k: &BigInt) -> DensePolyZ {
        Self::new(self.coeffs.iter().map(|c| c / k).collect())
    }
}

/// Resultant via the subresultant polynomial remainder sequence.
pub fn resultant(a: &DensePolyZ, b: &DensePolyZ) -> Result<BigInt> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput("resultant"));
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut sign_neg = false;
    if a.degree() < b.degree() {
        if a.degree().unwrap() % 2 == 1 && b.degree().unwrap() % 2 == 1 {
            sign_neg = true;
        }
        std::mem::swap(&mut a, &mut b);
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    let res = loop {
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        if db == 0 {
            // res(A, c) = c^deg A, folded through the accumulated h.
            let lc = b.leading().unwrap().clone();
            if da == 0 {
                break BigInt::one();
            }
            let num = lc.pow(da as u32);
            break if da == 1 {
                num
            } else {
                num / h.pow(da as u32 - 1)
            };
        }
        let delta = da - db;
        let r = a.pseudo_rem(&b);
        if r.is_zero() {
            return Ok(BigInt::zero());
        }
        if da % 2 == 1 && db % 2 == 1 {
            sign_neg = !sign_neg;
        }
        a = b;
        b = r.exact_div_scalar(&(&g * h.pow(delta as u32)));
        g = a.leading().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta as u32) / h.pow(delta as u32 - 1)
        };
    };
    Ok(if sign_neg { -res } else { res })
}

/// `(-1)^(n(n-1)/2) Res(F, F')` for monic `F` of degree `n >= 2`.
pub fn discriminant(f: &DensePolyZ) -> Result<BigInt> {
    let n = f.degree().unwrap_or(0);
    if n < 2 {
        return Err(Error::DegreeTooSmall("discriminant needs degree >= 2"));
    }
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let r = resultant(f, &f.derivative())?;
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -r } else { r })
}

/// Unique development `F = Σ a_i(x) φ(x)^i` with `deg a_i < deg φ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiDevelopment {
    pub phi: DensePolyZ,
    pub p: u64,
    pub terms: Vec<DensePolyZ>,
    pub vals: Vec<Valuation>,
}

impl PhiDevelopment {
    pub fn reconstruct(&self) -> DensePolyZ {
        let mut acc = DensePolyZ::zero();
        for t in self.terms.iter().rev() {
            acc = &(&acc * &self.phi) + t;
        }
        acc
    }
}

pub fn phi_expand(f: &DensePolyZ, phi: &DensePolyZ, p: u64) -> Result<PhiDevelopment> {
    if phi.degree().unwrap_or(0) == 0 {
        return Err(Error::DegreeTooSmall("phi must be non-constant"));
    }
    if !phi.is_monic() || !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let count = f.degree().unwrap() / phi.degree().unwrap() + 1;
    let mut terms = Vec::with_capacity(count);
    let mut cur = f.clone();
    for _ in 0..count {
        let (q, r) = cur.divrem(phi)?;
        terms.push(r);
        cur = q;
    }
    debug_assert!(cur.is_zero());
    let vals = terms
        .iter()
        .map(|t| t.valp(p))
        .collect::<Result<Vec<_>>>()?;
    Ok(PhiDevelopment {
        phi: phi.clone(),
        p,
        terms,
        vals,
    })
}

impl fmt::Debug for DensePolyZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for DensePolyZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &DensePolyZ {
    type Output = DensePolyZ;
    fn add(self, rhs: &DensePolyZ) -> DensePolyZ {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        DensePolyZ::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &DensePolyZ {
    type Output = DensePolyZ;
    fn sub(self, rhs: &DensePolyZ) -> DensePolyZ {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        DensePolyZ::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &DensePolyZ {
    type Output = DensePolyZ;
    fn neg(self) -> DensePolyZ {
        DensePolyZ::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &DensePolyZ {
    type Output = DensePolyZ;
    fn mul(self, rhs: &DensePolyZ) -> DensePolyZ {
        if self.is_zero() || rhs.is_zero() {
            return DensePolyZ::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        DensePolyZ::new(out)
    }
}
