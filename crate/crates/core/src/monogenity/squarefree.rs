use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{abs_biguint, is_prime, perfect_power, trial_factor, Primality};

/// Trial-division bound used when none is configured.
pub const DEFAULT_SF_BOUND: u64 = 1_000_000;

/// Environment variable overriding [`DEFAULT_SF_BOUND`].
pub const SF_BOUND_ENV: &str = "TRINOGEN_SF_BOUND";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SquarefreeStatus {
    SquareFree,
    NotSquareFree,
    Unknown,
}

impl fmt::Display for SquarefreeStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SquarefreeStatus::SquareFree => "SquareFree",
            SquarefreeStatus::NotSquareFree => "NotSquareFree",
            SquarefreeStatus::Unknown => "Unknown",
        })
    }
}

/// The configured bound: `TRINOGEN_SF_BOUND` if set and parseable, else the default.
pub fn sf_bound_from_env() -> u64 {
    std::env::var(SF_BOUND_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&b: &u64| b >= 2)
        .unwrap_or(DEFAULT_SF_BOUND)
}

/// Decides square-freeness of a nonzero integer as far as `bound` allows.
pub fn squarefree_status(t: &BigInt, bound: u64) -> Result<SquarefreeStatus> {
    if t.is_zero() {
        return Err(Error::ZeroInput("squarefree_status"));
    }
    let (factors, rest) = trial_factor(&abs_biguint(t), bound);
    if factors.iter().any(|&(_, e)| e > 1) {
        return Ok(SquarefreeStatus::NotSquareFree);
    }
    Ok(cofactor_status(&rest, bound))
}

/// Status of a cofactor with no prime factor up to `bound`.
fn cofactor_status(rest: &BigUint, bound: u64) -> SquarefreeStatus {
    if rest.is_one() {
        return SquarefreeStatus::SquareFree;
    }
    if perfect_power(rest).is_some() {
        return SquarefreeStatus::NotSquareFree;
    }
    // every prime factor exceeds bound, so below bound^3 there are at most two
    let b = BigUint::from(bound);
    if *rest < &b * &b * &b {
        return SquarefreeStatus::SquareFree;
    }
    match is_prime(rest) {
        Primality::Prime => SquarefreeStatus::SquareFree,
        Primality::ProbablePrime | Primality::Composite => SquarefreeStatus::Unknown,
    }
}
