//! Monogenity certificates for trinomials `x^n + a x^m + b`: closed-form
//! discriminant, irreducibility routes, the `θ^x / p^y` generator
//! certificate, dyadic congruence cases, the common index divisor test and
//! the verdict pipeline combining them.

mod certificates;
mod dyadic;
mod squarefree;
mod trinomial;
mod verdict;

pub use certificates::{
    alpha_minimal_polynomial, generator_certificate, generator_certificate_at,
    generator_hypotheses, irreducibility_certificate, is_eisenstein, odd_valuation_check,
    power_charpoly, AlphaCert, IrreducibilityCertificate, OddValuationOutcome,
};
pub use dyadic::{
    certified_index_divisor, common_index_divisor, dyadic_case, index_divisor_witness,
    pure_field_check, DyadicCase, DyadicEvidence, IndexDivisorWitness,
};
pub use squarefree::{
    sf_bound_from_env, squarefree_status, SquarefreeStatus, DEFAULT_SF_BOUND, SF_BOUND_ENV,
};
pub use trinomial::{disc_trinomial, Trinomial, DISC_FORMULA_READING};
pub use verdict::{
    square_dividing_primes, verdict, MonogenityVerdict, VerdictKind, VerdictOptions,
};
