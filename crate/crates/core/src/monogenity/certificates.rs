use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::squarefree::{squarefree_status, SquarefreeStatus};
use super::trinomial::{disc_trinomial, Trinomial};
use crate::error::{Error, Result};
use crate::exactnum::{
    abs_biguint, dioph_solve, is_prime, strip_p, trial_factor, valp, Primality, Valuation,
};
use crate::ffactor;
use crate::newton::analyze_phi;
use crate::polyring::{resultant, DensePolyZ, PrimeField};

/// Primes below this are tried for the `F mod p` irreducibility route.
const MOD_P_ROUTE_LIMIT: u64 = 50;

/// Distinct primes of `|t|` that trial division up to `bound` can certify,
/// ascending. A leftover cofactor is included when it is a proven prime.
pub(crate) fn certified_primes(t: &BigUint, bound: u64) -> Vec<u64> {
    let (factors, rest) = trial_factor(t, bound);
    let mut out: Vec<u64> = factors.into_iter().map(|(p, _)| p).collect();
    if let Some(r) = rest.to_u64() {
        if r > 1 && is_prime(&rest) == Primality::Prime {
            out.push(r);
        }
    }
    out
}

/// Primes dividing both `a` and `b`.
fn common_primes(t: &Trinomial, bound: u64) -> Vec<u64> {
    let g = t.a().gcd(t.b());
    certified_primes(&abs_biguint(&g), bound)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IrreducibilityCertificate {
    /// `p | a`, `p | b`, `p^2 ∤ b`.
    Eisenstein { p: u64 },
    /// The `x`-polygon at `p` is a single side of degree 1.
    OneSidedPolygon { p: u64, valuation_b: u64 },
    /// `F mod p` is irreducible over F_p.
    IrreducibleModP { p: u64 },
}

impl fmt::Display for IrreducibilityCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Eisenstein { p } => write!(f, "{p}-Eisenstein"),
            Self::OneSidedPolygon { p, valuation_b } => {
                write!(
                    f,
                    "one-sided {p}-adic polygon of degree 1 (v_{p}(b) = {valuation_b})"
                )
            }
            Self::IrreducibleModP { p } => write!(f, "irreducible mod {p}"),
        }
    }
}

fn val(p: u64, t: &BigInt) -> Valuation {
    valp(p, t).expect("p >= 2")
}

/// `n * v_p(a) > (n - m) * v_p(b)`, with `v_p(0)` infinite.
fn a_above_side(t: &Trinomial, p: u64, vb: u64) -> bool {
    match val(p, t.a()) {
        Valuation::Infinity => true,
        Valuation::Finite(va) => t.n() as u128 * va as u128 > (t.n() - t.m()) as u128 * vb as u128,
    }
}

fn one_sided_at(t: &Trinomial, p: u64) -> Option<u64> {
    let vb = val(p, t.b()).finite()?;
    (vb >= 1 && (t.n() as u64).gcd(&vb) == 1 && a_above_side(t, p, vb)).then_some(vb)
}

/// Proves irreducibility over Q when one of the cheap routes applies.
/// `None` means not proven; reducibility is never claimed.
pub fn irreducibility_certificate(t: &Trinomial, bound: u64) -> Option<IrreducibilityCertificate> {
    let primes = common_primes(t, bound);
    for &p in &primes {
        if val(p, t.b()) == Valuation::Finite(1) {
            return Some(IrreducibilityCertificate::Eisenstein { p });
        }
    }
    for &p in &primes {
        if let Some(valuation_b) = one_sided_at(t, p) {
            return Some(IrreducibilityCertificate::OneSidedPolygon { p, valuation_b });
        }
    }
    let f = t.to_poly();
    for p in (2..MOD_P_ROUTE_LIMIT).filter(|&p| crate::exactnum::is_prime_u64(p)) {
        let field = PrimeField::new(p).expect("small prime");
        if ffactor::is_irreducible(&field, &field.reduce_poly(&f)).unwrap_or(false) {
            return Some(IrreducibilityCertificate::IrreducibleModP { p });
        }
    }
    None
}

/// Proof that `α = θ^x / p^y` generates a ring with index prime to `p`
/// while `θ` itself does not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaCert {
    pub p: u64,
    pub x: u64,
    pub y: i64,
    /// Minimal polynomial of α.
    pub h: DensePolyZ,
    pub eisenstein_ok: bool,
    /// Square-freeness of the `p`-free part of the discriminant.
    pub deltap_status: SquarefreeStatus,
    pub valuation_b: u64,
    /// `ind_x(F)` at `p`, which equals `(n - 1)(v_p(b) - 1) / 2`.
    pub index_bound: u64,
}

/// `Π (X - θ_i^k)` over the roots of monic `f`, by evaluating
/// `Res_t(f(t), X - t^k)` at `X = 0..=n` and interpolating.
pub fn power_charpoly(f: &DensePolyZ, k: u64) -> Result<DensePolyZ> {
    let n = f.degree().ok_or(Error::ZeroInput("power_charpoly"))?;
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let k = k as usize;
    let mut values = Vec::with_capacity(n + 1);
    for xv in 0..=n {
        let mut g = vec![BigInt::zero(); k + 1];
        g[0] = BigInt::from(xv);
        g[k] -= 1;
        values.push(resultant(f, &DensePolyZ::new(g))?);
    }
    interpolate_forward(values)
}

/// The polynomial of degree `< len` taking `values[i]` at `X = i`.
fn interpolate_forward(mut values: Vec<BigInt>) -> Result<DensePolyZ> {
    let len = values.len();
    let mut acc = DensePolyZ::zero();
    let mut falling = DensePolyZ::one();
    let mut fact = BigInt::one();
    for j in 0..len {
        let (q, r) = values[0].div_rem(&fact);
        if !r.is_zero() {
            return Err(Error::InternalContradiction(format!(
                "forward difference {j} is not divisible by {j}!"
            )));
        }
        acc = &acc + &falling.scale(&q);
        for i in 0..len - j - 1 {
            values[i] = &values[i + 1] - &values[i];
        }
        values.truncate(len - j - 1);
        falling = &falling * &DensePolyZ::from_i64s(&[-(j as i64), 1]);
        fact *= j + 1;
    }
    Ok(acc)
}

/// `p^{-y n} H̃(p^y X)`, exact or an error.
fn rescale(htilde: &DensePolyZ, p: u64, y: u64) -> Result<DensePolyZ> {
    let n = htilde.degree().unwrap_or(0);
    let mut out = Vec::with_capacity(n + 1);
    for (i, c) in htilde.coeffs().iter().enumerate() {
        let d = num_traits::pow(BigInt::from(p), (y as usize) * (n - i));
        let (q, r) = c.div_rem(&d);
        if !r.is_zero() {
            return Err(Error::InternalContradiction(format!(
                "coefficient {i} of the characteristic polynomial is not divisible by {p}^{}",
                y as usize * (n - i)
            )));
        }
        out.push(q);
    }
    Ok(DensePolyZ::new(out))
}

/// Minimal polynomial of `θ^x / p^y` for a root `θ` of irreducible `f`.
pub fn alpha_minimal_polynomial(f: &DensePolyZ, p: u64, x: u64, y: u64) -> Result<DensePolyZ> {
    rescale(&power_charpoly(f, x)?, p, y)
}

pub fn is_eisenstein(h: &DensePolyZ, p: u64) -> bool {
    let Some(n) = h.degree() else { return false };
    if !h.is_monic() || n == 0 {
        return false;
    }
    let pb = BigInt::from(p);
    h.coeffs()[..n].iter().all(|c| c.is_multiple_of(&pb))
        && val(p, &h.coeff(0)) == Valuation::Finite(1)
}

/// `v_p(b)` when `p` meets the valuation hypotheses of the generator
/// certificate: `v_p(b) >= 2`, `gcd(n, v_p(b)) = 1`, `n v_p(a) > (n - m) v_p(b)`.
pub fn generator_hypotheses(t: &Trinomial, p: u64) -> Option<u64> {
    one_sided_at(t, p).filter(|&vb| vb >= 2)
}

/// Builds the certificate at a prime already known to satisfy the valuation
/// hypotheses. `Ok(None)` when `Δ_p` is provably not square-free.
pub fn generator_certificate_at(t: &Trinomial, p: u64, bound: u64) -> Result<Option<AlphaCert>> {
    let Some(vb) = generator_hypotheses(t, p) else {
        return Ok(None);
    };
    let delta = disc_trinomial(t);
    if delta.is_zero() {
        return Ok(None);
    }
    let deltap = strip_p(p, &delta)?.unit_part;
    let status = squarefree_status(&deltap, bound)?;
    if status == SquarefreeStatus::NotSquareFree {
        return Ok(None);
    }
    let n = t.n() as u64;
    let (x, y) = dioph_solve(vb, n)?;
    let f = t.to_poly();
    let h = alpha_minimal_polynomial(&f, p, x, y as u64)?;
    let eisenstein_ok = is_eisenstein(&h, p);
    if !eisenstein_ok || h.degree() != Some(t.n()) {
        return Err(Error::InternalContradiction(format!(
            "minimal polynomial of theta^{x}/{p}^{y} is not {p}-Eisenstein: {h}"
        )));
    }
    let analysis = analyze_phi(&f, &DensePolyZ::x(), n, p)?;
    let expected = (n - 1) * (vb - 1) / 2;
    let sides = &analysis.polygon.sides;
    if sides.len() != 1 || sides[0].degree != 1 || analysis.index != expected || expected < 1 {
        return Err(Error::InternalContradiction(format!(
            "x-polygon at {p} is not one side of degree 1 with index {expected}"
        )));
    }
    Ok(Some(AlphaCert {
        p,
        x,
        y,
        h,
        eisenstein_ok,
        deltap_status: status,
        valuation_b: vb,
        index_bound: analysis.index,
    }))
}

/// Scans primes dividing `gcd(a, b)` in increasing order and returns the
/// first generator certificate.
pub fn generator_certificate(t: &Trinomial, bound: u64) -> Result<Option<AlphaCert>> {
    for p in common_primes(t, bound) {
        if let Some(cert) = generator_certificate_at(t, p, bound)? {
            return Ok(Some(cert));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OddValuationOutcome {
    pub applicable: bool,
    pub p: Option<u64>,
    pub certificate: Option<AlphaCert>,
}

/// Specialization to `n = 2^r`: some `p` with `v_p(a) >= v_p(b) >= 3`,
/// `v_p(b)` odd and `Δ_p` not provably square-full.
pub fn odd_valuation_check(
    r: u32,
    m: usize,
    a: &BigInt,
    b: &BigInt,
    bound: u64,
) -> Result<OddValuationOutcome> {
    let t = Trinomial::two_power(r, m, a.clone(), b.clone())?;
    let n = t.n() as u128;
    for p in common_primes(&t, bound) {
        let Valuation::Finite(vb) = val(p, b) else {
            continue;
        };
        let va = val(p, a);
        if vb < 3 || vb % 2 == 0 || va < Valuation::Finite(vb) {
            continue;
        }
        let implied = (n as u64).gcd(&vb) == 1
            && va
                .finite()
                .map_or(true, |va| n * va as u128 > (n - m as u128) * vb as u128);
        if !implied || generator_hypotheses(&t, p).is_none() {
            return Err(Error::InternalContradiction(format!(
                "odd-valuation hypotheses at {p} do not imply the generator hypotheses"
            )));
        }
        if let Some(cert) = generator_certificate_at(&t, p, bound)? {
            return Ok(OddValuationOutcome {
                applicable: true,
                p: Some(p),
                certificate: Some(cert),
            });
        }
    }
    Ok(OddValuationOutcome {
        applicable: false,
        p: None,
        certificate: None,
    })
}
