//! Integer utilities: p-adic valuations, p-free parts, dyadic binomial
//! valuations, Möbius inversion counts and primality.

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// p-adic valuation of an integer; `Infinity` only for zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Valuation {
    Finite(u64),
    Infinity,
}

impl Valuation {
    pub fn is_finite(self) -> bool {
        matches!(self, Valuation::Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Infinity) => Ordering::Less,
            (Valuation::Infinity, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Infinity, Valuation::Infinity) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => f.write_str("inf"),
        }
    }
}

/// `t = p^nu * unit_part` with `p ∤ unit_part`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrippedInt {
    pub nu: u64,
    pub unit_part: BigInt,
}

fn check_p(p: u64) -> Result<()> {
    if p < 2 {
        return Err(Error::InvalidPrime(p.to_string()));
    }
    Ok(())
}

pub fn valp(p: u64, t: &BigInt) -> Result<Valuation> {
    check_p(p)?;
    if t.is_zero() {
        return Ok(Valuation::Infinity);
    }
    Ok(Valuation::Finite(strip_unchecked(p, t).nu))
}

/// Valuation of a machine integer; convenience for exponents and indices.
pub fn valp_u64(p: u64, mut t: u64) -> Valuation {
    if t == 0 {
        return Valuation::Infinity;
    }
    let mut v = 0;
    while t % p == 0 {
        t /= p;
        v += 1;
    }
    Valuation::Finite(v)
}

fn strip_unchecked(p: u64, t: &BigInt) -> StrippedInt {
    if p == 2 {
        let nu = t.magnitude().trailing_zeros().unwrap_or(0);
        return StrippedInt {
            nu,
            unit_part: t >> nu,
        };
    }
    let pb = BigInt::from(p);
    let mut nu = 0;
    let mut cur = t.clone();
    loop {
        let (q, r) = cur.div_rem(&pb);
        if !r.is_zero() {
            break;
        }
        cur = q;
        nu += 1;
    }
    StrippedInt { nu, unit_part: cur }
}

pub fn strip_p(p: u64, t: &BigInt) -> Result<StrippedInt> {
    check_p(p)?;
    if t.is_zero() {
        return Err(Error::ZeroInput("strip_p"));
    }
    Ok(strip_unchecked(p, t))
}

/// `ν_2(C(2^r, j))` for `1 <= j < 2^r`, which equals `r - ν_2(j)`.
pub fn binom_val2(r: u32, j: u64) -> Result<u32> {
    if r == 0 || r >= 64 || j == 0 || j >= (1u64 << r) {
        return Err(Error::OutOfRange(format!("binom_val2(r={r}, j={j})")));
    }
    Ok(r - j.trailing_zeros())
}

pub fn mobius(mut n: u64) -> i32 {
    let mut sign = 1;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
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

/// Distinct prime divisors of a machine integer, ascending.
pub fn prime_divisors_u64(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Number of monic irreducible polynomials of degree `d` over F_p,
/// `(1/d) Σ_{e | d} μ(e) p^{d/e}`.
pub fn count_monic_irreducibles(p: u64, d: u32) -> Result<BigUint> {
    check_p(p)?;
    if d == 0 {
        return Err(Error::OutOfRange("degree must be positive".into()));
    }
    let pb = BigUint::from(p);
    let mut pos = BigUint::zero();
    let mut neg = BigUint::zero();
    for e in divisors(d as u64) {
        let term = pb.pow((d as u64 / e) as u32);
        match mobius(e) {
            1 => pos += term,
            -1 => neg += term,
            _ => {}
        }
    }
    Ok((pos - neg) / BigUint::from(d))
}

/// Unique `(x, y)` with `k*x - n*y = 1` and `0 <= x < n`.
pub fn dioph_solve(k: u64, n: u64) -> Result<(u64, i64)> {
    if k == 0 || n == 0 {
        return Err(Error::OutOfRange(
            "dioph_solve needs positive k and n".into(),
        ));
    }
    let eg = (k as i128).extended_gcd(&(n as i128));
    if eg.gcd != 1 {
        return Err(Error::NotCoprime(k, n));
    }
    let x = eg.x.rem_euclid(n as i128);
    let y = (k as i128 * x - 1) / n as i128;
    Ok((x as u64, y as i64))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Primality {
    Prime,
    /// Passed strong-pseudoprime tests beyond the deterministic range.
    ProbablePrime,
    Composite,
}

const MR_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
const MR_EXTRA_BASES: [u64; 12] = [43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97];

fn mr_deterministic_limit() -> BigUint {
    // Bound below which the 13 prime bases 2..=41 are a proof.
    "3317044064679887385961981".parse().unwrap()
}

fn strong_probable_prime(n: &BigUint, base: u64, d: &BigUint, s: u64) -> bool {
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let a = BigUint::from(base) % n;
    if a.is_zero() {
        return true;
    }
    let mut x = a.modpow(d, n);
    if x == one || x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n_minus_1 {
            return true;
        }
        if x == one {
            return false;
        }
    }
    false
}

pub fn is_prime(n: &BigUint) -> Primality {
    if let Some(small) = n.to_u64() {
        if small < 2 {
            return Primality::Composite;
        }
        for &b in MR_BASES.iter() {
            if small == b {
                return Primality::Prime;
            }
            if small % b == 0 {
                return Primality::Composite;
            }
        }
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    for &b in MR_BASES.iter() {
        if !strong_probable_prime(n, b, &d, s) {
            return Primality::Composite;
        }
    }
    if *n < mr_deterministic_limit() {
        return Primality::Prime;
    }
    for &b in MR_EXTRA_BASES.iter() {
        if !strong_probable_prime(n, b, &d, s) {
            return Primality::Composite;
        }
    }
    Primality::ProbablePrime
}

pub fn is_prime_u64(n: u64) -> bool {
    is_prime(&BigUint::from(n)) == Primality::Prime
}

/// Validates a caller-supplied prime.
pub fn check_prime(p: u64) -> Result<()> {
    check_p(p)?;
    if !is_prime_u64(p) {
        return Err(Error::CompositeModulus(p.to_string()));
    }
    Ok(())
}

const SIEVE_CAP: u64 = 10_000_000;

/// Primes up to `bound`, from a sieve shared across calls.
fn primes_up_to(bound: u64) -> Arc<Vec<u64>> {
    static CACHE: RwLock<Option<(u64, Arc<Vec<u64>>)>> = RwLock::new(None);
    if let Some((limit, primes)) = CACHE.read().unwrap().as_ref() {
        if *limit >= bound {
            return Arc::clone(primes);
        }
    }
    let limit = bound.max(1 << 16) as usize;
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            primes.push(i as u64);
            for j in (i * i..=limit).step_by(i) {
                composite[j] = true;
            }
        }
    }
    let primes = Arc::new(primes);
    *CACHE.write().unwrap() = Some((limit as u64, Arc::clone(&primes)));
    primes
}

/// `t mod d` without allocating.
fn rem_u64(t: &BigUint, d: u64) -> u64 {
    let d = d as u128;
    t.iter_u64_digits()
        .rev()
        .fold(0u128, |acc, digit| ((acc << 64) | digit as u128) % d) as u64
}

/// Trial division of `|t|` by every integer in `[2, bound]`.
/// Returns the prime factorization found and the unfactored cofactor.
pub fn trial_factor(t: &BigUint, bound: u64) -> (Vec<(u64, u32)>, BigUint) {
    let mut rest = t.clone();
    let mut factors = Vec::new();
    if rest.is_zero() {
        return (factors, rest);
    }
    let mut small = rest.to_u128();
    let primes = primes_up_to(bound.min(SIEVE_CAP));
    // past the sieve, odd trial divisors
    let tail = (SIEVE_CAP + 1) | 1..=bound;
    let mut next = bound.saturating_add(1);
    let candidates = primes
        .iter()
        .copied()
        .take_while(|&d| d <= bound)
        .chain(tail.step_by(2));
    for d in candidates {
        if small.is_some_and(|r| (d as u128) * (d as u128) > r) {
            next = d;
            break;
        }
        let mut e = 0;
        while rem_u64(&rest, d) == 0 {
            rest /= d;
            e += 1;
        }
        if e > 0 {
            factors.push((d, e));
            small = rest.to_u128();
        }
    }
    // Whatever is left is prime if it is below the square of the search bound.
    if rest > BigUint::one() {
        let lim = BigUint::from(next);
        if &lim * &lim > rest {
            if let Some(r) = rest.to_u64() {
                factors.push((r, 1));
                rest = BigUint::one();
            }
        }
    }
    (factors, rest)
}

/// Returns `(root, k)` with `k >= 2` maximal such that `n = root^k`.
pub fn perfect_power(n: &BigUint) -> Option<(BigUint, u32)> {
    if *n < BigUint::from(4u32) {
        return None;
    }
    let bits = n.bits() as u32;
    let mut best = None;
    for k in 2..=bits {
        let root = n.nth_root(k);
        if root < BigUint::from(2u32) {
            break;
        }
        if root.pow(k) == *n {
            best = Some((root, k));
        }
    }
    best
}

/// `"2^24 * 1273609"` style digest of a nonzero integer at `p`.
pub fn digest(p: u64, t: &BigInt) -> String {
    if t.is_zero() {
        return "0".to_string();
    }
    let s = strip_unchecked(p, t);
    match s.nu {
        0 => s.unit_part.to_string(),
        nu if s.unit_part == BigInt::one() => format!("{p}^{nu}"),
        nu => format!("{p}^{nu} * {}", s.unit_part),
    }
}

pub fn abs_biguint(t: &BigInt) -> BigUint {
    t.abs().to_biguint().expect("abs is nonnegative")
}

pub fn sign_of(t: &BigInt) -> Sign {
    t.sign()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn binom(n: u64, k: u64) -> BigInt {
        let mut acc = BigInt::one();
        for i in 0..k {
            acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
        }
        acc
    }

    #[test]
    fn valuations() {
        assert_eq!(valp(2, &bi(12)).unwrap(), Valuation::Finite(2));
        assert_eq!(valp(2, &bi(0)).unwrap(), Valuation::Infinity);
        assert_eq!(valp(2, &bi(1273609)).unwrap(), Valuation::Finite(0));
        assert_eq!(valp(3, &bi(-18)).unwrap(), Valuation::Finite(2));
        assert!(valp(1, &bi(4)).is_err());
        assert!(Valuation::Finite(1000) < Valuation::Infinity);
    }

    #[test]
    fn stripping() {
        assert_eq!(
            strip_p(2, &bi(24)).unwrap(),
            StrippedInt {
                nu: 3,
                unit_part: bi(3)
            }
        );
        assert_eq!(
            strip_p(3, &bi(-18)).unwrap(),
            StrippedInt {
                nu: 2,
                unit_part: bi(-2)
            }
        );
        assert_eq!(strip_p(2, &bi(0)), Err(Error::ZeroInput("strip_p")));
        let delta = BigInt::from(1273609) << 24;
        assert_eq!(
            strip_p(2, &delta).unwrap(),
            StrippedInt {
                nu: 24,
                unit_part: bi(1273609)
            }
        );
        assert_eq!(digest(2, &delta), "2^24 * 1273609");
        assert_eq!(digest(2, &bi(-8)), "2^3 * -1");
        assert_eq!(digest(2, &bi(8)), "2^3");
    }

    #[test]
    fn dyadic_binomials() {
        assert_eq!(binom_val2(3, 4).unwrap(), 1);
        assert_eq!(binom_val2(3, 1).unwrap(), 3);
        assert_eq!(binom_val2(5, 2).unwrap(), 4);
        assert!(binom_val2(3, 8).is_err());
        assert!(binom_val2(3, 0).is_err());
        for r in 1..=10u32 {
            for j in 1..(1u64 << r) {
                let direct = valp(2, &binom(1 << r, j)).unwrap();
                assert_eq!(direct, Valuation::Finite(binom_val2(r, j).unwrap() as u64));
            }
        }
    }

    #[test]
    fn irreducible_counts() {
        assert_eq!(count_monic_irreducibles(2, 1).unwrap(), BigUint::from(2u32));
        assert_eq!(count_monic_irreducibles(2, 2).unwrap(), BigUint::from(1u32));
        assert_eq!(count_monic_irreducibles(3, 1).unwrap(), BigUint::from(3u32));
        assert_eq!(count_monic_irreducibles(2, 4).unwrap(), BigUint::from(3u32));
        // Necklace identity Σ_{d|D} d N_p(d) = p^D.
        for p in [2u64, 3, 5, 7] {
            for big_d in 1..=8u32 {
                let mut sum = BigUint::zero();
                for d in divisors(big_d as u64) {
                    sum += BigUint::from(d) * count_monic_irreducibles(p, d as u32).unwrap();
                }
                assert_eq!(sum, BigUint::from(p).pow(big_d));
            }
        }
    }

    #[test]
    fn diophantine() {
        assert_eq!(dioph_solve(3, 8).unwrap(), (3, 1));
        assert_eq!(dioph_solve(3, 16).unwrap(), (11, 2));
        assert_eq!(dioph_solve(1, 5).unwrap(), (1, 0));
        assert_eq!(dioph_solve(4, 8), Err(Error::NotCoprime(4, 8)));
        for k in 1..40u64 {
            for n in 1..40u64 {
                if let Ok((x, y)) = dioph_solve(k, n) {
                    assert!(x < n);
                    assert_eq!(k as i64 * x as i64 - n as i64 * y, 1);
                }
            }
        }
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (2..200).filter(|&n| is_prime_u64(n)).collect();
        let naive: Vec<u64> = (2..200u64)
            .filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0))
            .collect();
        assert_eq!(primes, naive);
        // Strong pseudoprime to bases 2..=37 but composite.
        let spsp: BigUint = "3825123056546413051".parse().unwrap();
        assert_eq!(is_prime(&spsp), Primality::Composite);
        let m61 = (BigUint::one() << 61) - BigUint::one();
        assert_eq!(is_prime(&m61), Primality::Prime);
        let m127 = (BigUint::one() << 127) - BigUint::one();
        assert_eq!(is_prime(&m127), Primality::ProbablePrime);
        assert!(check_prime(9).is_err());
        assert!(check_prime(1).is_err());
    }

    #[test]
    fn mobius_values() {
        let expected = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0];
        for (i, &m) in expected.iter().enumerate() {
            assert_eq!(mobius(i as u64 + 1), m);
        }
    }

    #[test]
    fn trial_division_and_powers() {
        let (f, rest) = trial_factor(&BigUint::from(2u32 * 2 * 3 * 1_000_003), 100);
        assert_eq!(f, vec![(2, 2), (3, 1)]);
        assert_eq!(rest, BigUint::from(1_000_003u32));
        let (f, rest) = trial_factor(&BigUint::from(97u32 * 89), 100);
        assert_eq!(f, vec![(89, 1), (97, 1)]);
        assert!(rest.is_one());
        assert_eq!(
            perfect_power(&BigUint::from(243u32)),
            Some((BigUint::from(3u32), 5))
        );
        assert_eq!(perfect_power(&BigUint::from(12u32)), None);
    }
}
