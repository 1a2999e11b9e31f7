use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::count_monic_irreducibles;
use crate::ore::{OreFactorization, PrimeIdealFactor};

/// Congruence families of `x^(2^r) + a x + b` for which 2 is predicted to be
/// a common index divisor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DyadicCase {
    /// `r >= 3`, `a ≡ 4`, `b ≡ 3 (mod 8)`.
    Case1,
    /// `r >= 4`, `a ≡ 8`, `b ≡ 7 (mod 16)`.
    Case2,
    /// `r >= 4`, `(a, b) ≡ (0, 31)` or `(16, 15) (mod 32)`.
    Case3,
}

impl fmt::Display for DyadicCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DyadicCase::Case1 => "Case1",
            DyadicCase::Case2 => "Case2",
            DyadicCase::Case3 => "Case3",
        })
    }
}

/// The matching case with the residues that witness it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DyadicEvidence {
    pub case: DyadicCase,
    pub r: u32,
    pub modulus: u64,
    pub a_residue: u64,
    pub b_residue: u64,
}

impl fmt::Display for DyadicEvidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: r = {}, a = {} mod {m}, b = {} mod {m}",
            self.case,
            self.r,
            self.a_residue,
            self.b_residue,
            m = self.modulus
        )
    }
}

fn residue(t: &BigInt, modulus: u64) -> u64 {
    let m = BigInt::from(modulus);
    (((t % &m) + &m) % &m).to_u64().expect("residue fits")
}

/// First matching congruence case, if any.
pub fn dyadic_case(r: u32, a: &BigInt, b: &BigInt) -> Option<DyadicEvidence> {
    let hit = |case, modulus| DyadicEvidence {
        case,
        r,
        modulus,
        a_residue: residue(a, modulus),
        b_residue: residue(b, modulus),
    };
    if r >= 3 && residue(a, 8) == 4 && residue(b, 8) == 3 {
        return Some(hit(DyadicCase::Case1, 8));
    }
    if r >= 4 && residue(a, 16) == 8 && residue(b, 16) == 7 {
        return Some(hit(DyadicCase::Case2, 16));
    }
    if r >= 4 && matches!((residue(a, 32), residue(b, 32)), (0, 31) | (16, 15)) {
        return Some(hit(DyadicCase::Case3, 32));
    }
    None
}

/// `x^(2^r) + b` with `r >= 4` and `b ≡ -1 (mod 32)`.
pub fn pure_field_check(r: u32, b: &BigInt) -> bool {
    r >= 4 && residue(b, 32) == 31
}

/// More primes of residue degree `d` above `p` than monic irreducibles of
/// degree `d` over F_p, which forces `p` to divide every index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexDivisorWitness {
    pub p: u64,
    pub d: u64,
    /// `P_d`
    pub primes_of_degree: u64,
    /// `N_p(d)`
    pub irreducible_count: BigUint,
}

impl fmt::Display for IndexDivisorWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "P_{d} = {} > N_{}({d}) = {}",
            self.primes_of_degree,
            self.p,
            self.irreducible_count,
            d = self.d
        )
    }
}

/// Least `d` with `P_d > N_p(d)` among the given residue degrees.
pub fn index_divisor_witness(
    p: u64,
    residue_degrees: &[u64],
) -> Result<Option<IndexDivisorWitness>> {
    let Some(&max_d) = residue_degrees.iter().max() else {
        return Ok(None);
    };
    for d in 1..=max_d {
        let count = residue_degrees.iter().filter(|&&f| f == d).count() as u64;
        if count == 0 {
            continue;
        }
        let n_pd = count_monic_irreducibles(p, d as u32)?;
        if BigUint::from(count) > n_pd {
            return Ok(Some(IndexDivisorWitness {
                p,
                d,
                primes_of_degree: count,
                irreducible_count: n_pd,
            }));
        }
    }
    Ok(None)
}

fn degrees(qs: &[PrimeIdealFactor]) -> Vec<u64> {
    qs.iter().map(|q| q.f).collect()
}

/// Common index divisor test on a complete (regular) factorization.
pub fn common_index_divisor(fact: &OreFactorization) -> Result<Option<IndexDivisorWitness>> {
    if !fact.regular {
        return Err(Error::NotRegular);
    }
    index_divisor_witness(fact.p, &degrees(&fact.factors))
}

/// Same test on the primes certified so far. `P_d` can only grow when the
/// factorization is completed, so a witness here is already conclusive.
pub fn certified_index_divisor(fact: &OreFactorization) -> Result<Option<IndexDivisorWitness>> {
    index_divisor_witness(fact.p, &degrees(&fact.certified_factors))
}
