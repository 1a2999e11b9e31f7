use num_bigint::BigInt;
use num_traits::Zero;

use super::certificates::{
    generator_certificate, irreducibility_certificate, odd_valuation_check, AlphaCert,
    IrreducibilityCertificate,
};
use super::dyadic::{
    certified_index_divisor, common_index_divisor, dyadic_case, pure_field_check, DyadicEvidence,
    IndexDivisorWitness,
};
use super::squarefree::{sf_bound_from_env, SquarefreeStatus};
use super::trinomial::{disc_trinomial, Trinomial};
use crate::error::{Error, Result};
use crate::exactnum::{abs_biguint, trial_factor};
use crate::ore::{factor_p, IndexBound, OreFactorization};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerdictOptions {
    /// Trial-division bound for square-free tests and discriminant factoring.
    pub sf_bound: u64,
    /// Proceed without an irreducibility certificate.
    pub assume_irreducible: bool,
}

impl Default for VerdictOptions {
    fn default() -> Self {
        VerdictOptions {
            sf_bound: sf_bound_from_env(),
            assume_irreducible: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerdictKind {
    /// `p` divides the index of every integral generator.
    FieldNotMonogenic {
        witness: IndexDivisorWitness,
        case: Option<DyadicEvidence>,
        /// Witness drawn from a complete factorization rather than the
        /// certified part of an irregular one.
        complete: bool,
    },
    PolyNotMonogenicFieldMonogenic(AlphaCert),
    /// As above, but square-freeness of `Δ_p` could not be decided.
    PolyNotMonogenicFieldConditional(AlphaCert),
    Inconclusive {
        reason: String,
        /// `(p, bound)` for every prime found with `v_p(Δ) >= 2`.
        index_bounds: Vec<(u64, IndexBound)>,
    },
}

impl VerdictKind {
    pub fn name(&self) -> &'static str {
        match self {
            VerdictKind::FieldNotMonogenic { .. } => "FieldNotMonogenic",
            VerdictKind::PolyNotMonogenicFieldMonogenic(_) => "PolyNotMonogenicFieldMonogenic",
            VerdictKind::PolyNotMonogenicFieldConditional(_) => "PolyNotMonogenicFieldConditional",
            VerdictKind::Inconclusive { .. } => "Inconclusive",
        }
    }

    /// Prime carrying the evidence, if any.
    pub fn prime(&self) -> Option<u64> {
        match self {
            VerdictKind::FieldNotMonogenic { witness, .. } => Some(witness.p),
            VerdictKind::PolyNotMonogenicFieldMonogenic(c)
            | VerdictKind::PolyNotMonogenicFieldConditional(c) => Some(c.p),
            VerdictKind::Inconclusive { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonogenityVerdict {
    pub kind: VerdictKind,
    /// Results applied, in order, as short descriptive slugs.
    pub trail: Vec<String>,
    pub irreducibility: Option<IrreducibilityCertificate>,
    pub assumed_irreducible: bool,
}

fn shape_string(fact: &OreFactorization) -> String {
    let parts: Vec<String> = fact
        .shape()
        .iter()
        .map(|(e, f)| format!("({e},{f})"))
        .collect();
    format!("{{{}}}", parts.join(","))
}

/// Index-divisor witness from the engine: complete factorization when regular,
/// certified primes otherwise.
fn engine_witness(fact: &OreFactorization) -> Result<Option<(IndexDivisorWitness, bool)>> {
    if fact.regular {
        Ok(common_index_divisor(fact)?.map(|w| (w, true)))
    } else {
        Ok(certified_index_divisor(fact)?.map(|w| (w, false)))
    }
}

fn engine_trail(trail: &mut Vec<String>, fact: &OreFactorization) {
    if fact.regular {
        trail.push(format!(
            "ore-engine: p={} regular, shape {}",
            fact.p,
            shape_string(fact)
        ));
    } else {
        trail.push(format!(
            "ore-engine: p={} not regular, {} certified primes",
            fact.p,
            fact.certified_factors.len()
        ));
    }
}

/// Runs the certificate pipeline on one trinomial.
pub fn verdict(t: &Trinomial, opts: &VerdictOptions) -> Result<MonogenityVerdict> {
    let mut trail = Vec::new();
    let irreducibility = irreducibility_certificate(t, opts.sf_bound);
    match &irreducibility {
        Some(c) => trail.push(format!("irreducible: {c}")),
        None if opts.assume_irreducible => trail.push("irreducible: assumed by caller".into()),
        None => {
            trail.push("irreducible: not proven".into());
            return Ok(MonogenityVerdict {
                kind: VerdictKind::Inconclusive {
                    reason: "irreducibility not certified".into(),
                    index_bounds: Vec::new(),
                },
                trail,
                irreducibility,
                assumed_irreducible: false,
            });
        }
    }
    let certified = irreducibility.is_some();
    let finish = |kind, trail| MonogenityVerdict {
        kind,
        trail,
        irreducibility,
        assumed_irreducible: !certified,
    };
    let f = t.to_poly();

    if let (Some(r), 1) = (t.log2_degree(), t.m()) {
        if t.a().is_zero() && pure_field_check(r, t.b()) {
            trail.push(format!("pure-field: r={r} >= 4, b = -1 mod 32"));
        }
        if let Some(ev) = dyadic_case(r, t.a(), t.b()) {
            trail.push(format!("dyadic-congruence: {ev}"));
            let fact = factor_p(&f, 2)?;
            engine_trail(&mut trail, &fact);
            match engine_witness(&fact)? {
                Some((witness, complete)) => {
                    trail.push(format!("common-index-divisor: {witness}"));
                    let kind = VerdictKind::FieldNotMonogenic {
                        witness,
                        case: Some(ev),
                        complete,
                    };
                    return Ok(finish(kind, trail));
                }
                None if certified => {
                    return Err(Error::InternalContradiction(format!(
                        "{} predicts 2 | i(K) for {t} but the engine found no witness",
                        ev.case
                    )));
                }
                None => trail.push(
                    "common-index-divisor: engine did not confirm the congruence prediction".into(),
                ),
            }
        }
    }

    let cert = match t.log2_degree() {
        Some(r) => {
            let odd = odd_valuation_check(r, t.m(), t.a(), t.b(), opts.sf_bound)?;
            if let Some(p) = odd.p {
                trail.push(format!(
                    "odd-valuation: p={p}, v_p(a) >= v_p(b) >= 3, v_p(b) odd"
                ));
            }
            match odd.certificate {
                Some(c) => Some(c),
                None => generator_certificate(t, opts.sf_bound)?,
            }
        }
        None => generator_certificate(t, opts.sf_bound)?,
    };
    if let Some(cert) = cert {
        trail.push(format!(
            "generator-certificate: p={}, alpha = theta^{}/{}^{}, minimal polynomial {}-Eisenstein, ind >= {}",
            cert.p, cert.x, cert.p, cert.y, cert.p, cert.index_bound
        ));
        trail.push(format!("p-free-discriminant: {}", cert.deltap_status));
        let kind = match cert.deltap_status {
            SquarefreeStatus::SquareFree => VerdictKind::PolyNotMonogenicFieldMonogenic(cert),
            _ => VerdictKind::PolyNotMonogenicFieldConditional(cert),
        };
        return Ok(finish(kind, trail));
    }

    let delta = disc_trinomial(t);
    if delta.is_zero() {
        let kind = VerdictKind::Inconclusive {
            reason: "discriminant is zero".into(),
            index_bounds: Vec::new(),
        };
        return Ok(finish(kind, trail));
    }
    let mut index_bounds = Vec::new();
    for p in square_dividing_primes(&delta, opts.sf_bound) {
        let fact = factor_p(&f, p)?;
        index_bounds.push((
            p,
            IndexBound {
                bound: fact.index_lower_bound,
                exact: fact.regular,
            },
        ));
        if (p as usize) < t.n() {
            if let Some((witness, complete)) = engine_witness(&fact)? {
                engine_trail(&mut trail, &fact);
                trail.push(format!("common-index-divisor: {witness}"));
                let kind = VerdictKind::FieldNotMonogenic {
                    witness,
                    case: None,
                    complete,
                };
                return Ok(finish(kind, trail));
            }
        }
    }
    trail.push("no certificate applies".into());
    let kind = VerdictKind::Inconclusive {
        reason: "no applicable certificate".into(),
        index_bounds,
    };
    Ok(finish(kind, trail))
}

/// Primes `p <= bound` (plus a proven-prime cofactor) with `p^2 | t`.
pub fn square_dividing_primes(t: &BigInt, bound: u64) -> Vec<u64> {
    let (factors, _) = trial_factor(&abs_biguint(t), bound);
    factors
        .into_iter()
        .filter(|&(_, e)| e >= 2)
        .map(|(p, _)| p)
        .collect()
}
