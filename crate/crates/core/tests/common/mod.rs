//! Independent oracles shared by the property and acceptance suites. Each
//! check returns `Err(description)` on the first disagreement.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use trinogen::exactnum::{binom_val2, count_monic_irreducibles, valp, Valuation};
use trinogen::ffactor::{factor, is_irreducible};
use trinogen::monogenity::{disc_trinomial, irreducibility_certificate, AlphaCert, Trinomial};
use trinogen::newton::{phi_index, principal_polygon, shifted_dev_2r, PrincipalPolygon};
use trinogen::ore::factor_p;
use trinogen::polyring::{
    discriminant, phi_expand, resultant, DensePolyZ, FiniteField, FqField, FqPoly, PolyArith,
    PrimeField,
};

pub type Check = Result<(), String>;

pub fn bi(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn nonzero(rng: &mut ChaCha8Rng, lim: i64) -> i64 {
    loop {
        let v = rng.gen_range(-lim..=lim);
        if v != 0 {
            return v;
        }
    }
}

// ---------------------------------------------------------------- discriminant

pub fn disc_matches(n: usize, m: usize, a: i64, b: i64) -> Check {
    let t = Trinomial::new(n, m, bi(a), bi(b)).map_err(|e| e.to_string())?;
    let closed = disc_trinomial(&t);
    let oracle = discriminant(&t.to_poly()).map_err(|e| e.to_string())?;
    if closed != oracle {
        return Err(format!("{t}: closed form {closed} vs resultant {oracle}"));
    }
    Ok(())
}

pub fn resultant_antisymmetric(a: &DensePolyZ, b: &DensePolyZ) -> Check {
    let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
    let ab = resultant(a, b).map_err(|e| e.to_string())?;
    let ba = resultant(b, a).map_err(|e| e.to_string())?;
    let expected = if da * db % 2 == 1 { -ba } else { ba };
    if ab != expected {
        return Err(format!(
            "Res({a}, {b}) = {ab}, sign-adjusted Res(b, a) = {expected}"
        ));
    }
    Ok(())
}

// ---------------------------------------------------------------- Ore engine

/// Outcome of an engine check: the input was usable and checked, or skipped.
pub enum Tested {
    Yes,
    Skipped,
}

/// Sum of e*f over the complete shape equals the degree, and certified
/// primes never exceed it.
pub fn ore_degree_sum(n: usize, m: usize, a: i64, b: i64, p: u64) -> Result<Tested, String> {
    let t = Trinomial::new(n, m, bi(a), bi(b)).map_err(|e| e.to_string())?;
    if irreducibility_certificate(&t, 10_000).is_none() {
        return Ok(Tested::Skipped);
    }
    let fact = factor_p(&t.to_poly(), p).map_err(|e| format!("{t} at {p}: {e}"))?;
    let certified: u64 = fact.certified_factors.iter().map(|q| q.e * q.f).sum();
    if certified > n as u64 {
        return Err(format!(
            "{t} at {p}: certified primes cover {certified} > {n}"
        ));
    }
    if fact.regular && fact.degree_sum() != n as u64 {
        return Err(format!("{t} at {p}: sum ef = {} != {n}", fact.degree_sum()));
    }
    Ok(Tested::Yes)
}

/// `v_p(Δ) >= 2 ind` and, when `p ∤ Δ`, every prime is unramified.
pub fn disc_index_inequality(n: usize, m: usize, a: i64, b: i64, p: u64) -> Check {
    let t = Trinomial::new(n, m, bi(a), bi(b)).map_err(|e| e.to_string())?;
    let delta = disc_trinomial(&t);
    if delta.is_zero() {
        return Ok(());
    }
    let Valuation::Finite(v) = valp(p, &delta).unwrap() else {
        unreachable!()
    };
    let fact = factor_p(&t.to_poly(), p).map_err(|e| format!("{t} at {p}: {e}"))?;
    if v < 2 * fact.index_lower_bound {
        return Err(format!(
            "{t} at {p}: v_p(disc) = {v} < 2 * {}",
            fact.index_lower_bound
        ));
    }
    if v == 0 && (!fact.regular || fact.factors.iter().any(|q| q.e != 1)) {
        return Err(format!(
            "{t} at {p}: p does not divide disc yet ramification found"
        ));
    }
    Ok(())
}

// ---------------------------------------------------------------- polygons

/// Random cloud: abscissae `0..=len` with some gaps, ordinate 0 at `len`.
pub fn random_cloud(rng: &mut ChaCha8Rng, max_len: usize, max_y: u64) -> Vec<(usize, u64)> {
    let len = rng.gen_range(1..=max_len);
    let mut cloud = vec![(0, rng.gen_range(0..=max_y))];
    for x in 1..len {
        if rng.gen_bool(0.6) {
            cloud.push((x, rng.gen_range(0..=max_y)));
        }
    }
    cloud.push((len, 0));
    // extra points to the right of the first zero are allowed
    if rng.gen_bool(0.3) {
        cloud.push((len + 1, rng.gen_range(0..=max_y)));
    }
    cloud
}

/// Lower envelope at integer `x` as the reduced fraction `(num, den)`: the
/// minimum over all segments between cloud points straddling `x`.
fn envelope(cloud: &[(usize, u64)], x: usize) -> (i128, i128) {
    let mut best: Option<(i128, i128)> = None;
    for &(x1, y1) in cloud {
        for &(x2, y2) in cloud {
            if !(x1 <= x && x <= x2) || (x1 == x2 && x1 != x) {
                continue;
            }
            let (num, den) = if x1 == x2 {
                (y1 as i128, 1)
            } else {
                let den = (x2 - x1) as i128;
                (
                    y1 as i128 * den + (y2 as i128 - y1 as i128) * (x - x1) as i128,
                    den,
                )
            };
            best = Some(match best {
                Some((bn, bd)) if bn * den <= num * bd => (bn, bd),
                _ => (num, den),
            });
        }
    }
    let (n, d) = best.expect("x inside the cloud");
    let g = n.gcd(&d);
    (n / g, d / g)
}

fn polygon_height(poly: &PrincipalPolygon, x: usize) -> Option<(i128, i128)> {
    let side = poly
        .sides
        .iter()
        .find(|s| s.start.0 <= x && x <= s.start.0 + s.length)?;
    let num = side.start.1 as i128 * side.e as i128 - side.h as i128 * (x - side.start.0) as i128;
    let den = side.e as i128;
    let g = num.gcd(&den);
    Some((num / g, den / g))
}

pub fn hull_matches(cloud: &[(usize, u64)]) -> Check {
    let poly = principal_polygon(cloud).map_err(|e| e.to_string())?;
    let first_zero = cloud
        .iter()
        .filter(|p| p.1 == 0)
        .map(|p| p.0)
        .min()
        .unwrap();
    let start = cloud.iter().map(|p| p.0).min().unwrap();
    if poly.length != first_zero || poly.start != start {
        return Err(format!(
            "extent ({}, {}) vs ({start}, {first_zero})",
            poly.start, poly.length
        ));
    }
    let mut prev_slope: Option<(u64, u64)> = None;
    for s in &poly.sides {
        if s.h == 0 || s.h.gcd(&s.e) != 1 || s.degree * s.e != s.length as u64 {
            return Err(format!("bad side data {s:?}"));
        }
        // slopes -h/e strictly increasing
        if let Some((ph, pe)) = prev_slope {
            if (s.h as u128) * (pe as u128) >= (ph as u128) * (s.e as u128) {
                return Err(format!("slopes not increasing at {s:?}"));
            }
        }
        prev_slope = Some((s.h, s.e));
    }
    for x in start..=first_zero {
        let env = envelope(cloud, x);
        let ours = if poly.sides.is_empty() {
            Some((0, 1))
        } else {
            polygon_height(&poly, x)
        };
        if ours != Some(env) {
            return Err(format!("height at {x}: {ours:?} vs envelope {env:?}"));
        }
    }
    for (x, y) in poly.vertices() {
        if !cloud.contains(&(x, y)) {
            return Err(format!("vertex ({x},{y}) is not a cloud point"));
        }
    }
    Ok(())
}

pub fn phi_index_matches(cloud: &[(usize, u64)], deg_phi: usize) -> Check {
    let poly = principal_polygon(cloud).map_err(|e| e.to_string())?;
    let max_y = cloud.iter().map(|p| p.1).max().unwrap();
    let mut count = 0u64;
    for x in 1.max(poly.start)..=poly.length {
        let (num, den) = envelope(cloud, x);
        for y in 1..=max_y as i128 {
            if y * den <= num {
                count += 1;
            }
        }
    }
    let ours = phi_index(&poly, deg_phi);
    if ours != count * deg_phi as u64 {
        return Err(format!(
            "phi_index {ours} vs lattice count {count} * {deg_phi}"
        ));
    }
    Ok(())
}

pub fn shifted_matches(r: u32, a: i64, b: i64) -> Check {
    let shifted = shifted_dev_2r(r, &bi(a), &bi(b)).map_err(|e| e.to_string())?;
    let f = DensePolyZ::trinomial(1 << r, 1, &bi(a), &bi(b));
    let direct = phi_expand(&f, &DensePolyZ::from_i64s(&[-1, 1]), 2).map_err(|e| e.to_string())?;
    if shifted.development != direct {
        return Err(format!("r={r} a={a} b={b}: developments differ"));
    }
    Ok(())
}

// ---------------------------------------------------------------- integers

pub fn binom_val2_matches(r: u32, j: u64) -> Check {
    let n = 1u64 << r;
    let mut c = BigInt::one();
    for i in 0..j {
        c = c * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    let direct = valp(2, &c).unwrap().finite().unwrap();
    let ours = binom_val2(r, j).unwrap() as u64;
    if direct != ours {
        return Err(format!(
            "v_2(C(2^{r}, {j})) = {direct}, binom_val2 = {ours}"
        ));
    }
    Ok(())
}

// ---------------------------------------------------------------- finite fields

/// Remainder of `a` modulo monic `m` over F_p, coefficient vectors low to high.
fn rem_fp(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let dm = m.len() - 1;
    while a.len() > dm {
        let lead = *a.last().unwrap();
        let shift = a.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                a[shift + i] = (a[shift + i] + p - lead * c % p) % p;
            }
        }
        a.pop();
    }
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn monic_polys(p: u64, d: usize) -> impl Iterator<Item = Vec<u64>> {
    let total = p.pow(d as u32);
    (0..total).map(move |mut k| {
        let mut c = Vec::with_capacity(d + 1);
        for _ in 0..d {
            c.push(k % p);
            k /= p;
        }
        c.push(1);
        c
    })
}

/// Irreducibility by trial division with every monic polynomial of degree
/// up to half.
pub fn irreducible_by_trial(f: &[u64], p: u64) -> bool {
    let d = f.len() - 1;
    (1..=d / 2).all(|k| monic_polys(p, k).all(|g| !rem_fp(f, &g, p).is_empty()))
}

pub fn irreducible_count_matches(p: u64, d: u32) -> Check {
    let brute = monic_polys(p, d as usize)
        .filter(|f| irreducible_by_trial(f, p))
        .count() as u64;
    let ours = count_monic_irreducibles(p, d).unwrap().to_u64().unwrap();
    if brute != ours {
        return Err(format!("N_{p}({d}): enumeration {brute}, formula {ours}"));
    }
    Ok(())
}

/// Field choice for factorization checks.
#[derive(Clone, Copy, Debug)]
pub enum SmallField {
    F2,
    F3,
    F4,
}

/// Trial division by every monic polynomial of degree up to half, with the
/// field elements enumerated explicitly.
fn irreducible_by_enumeration<F: FiniteField>(
    field: &F,
    elems: &[F::Elem],
    g: &FqPoly<F::Elem>,
) -> bool {
    let d = g.degree().unwrap();
    let q = elems.len();
    for k in 1..=d / 2 {
        for mut idx in 0..q.pow(k as u32) {
            let mut c = Vec::with_capacity(k + 1);
            for _ in 0..k {
                c.push(elems[idx % q].clone());
                idx /= q;
            }
            c.push(field.one());
            let h = field.poly_from(c);
            if field.poly_rem(g, &h).unwrap().is_zero() {
                return false;
            }
        }
    }
    true
}

fn check_factorization<F: FiniteField>(field: &F, elems: &[F::Elem], g: &FqPoly<F::Elem>) -> Check {
    if g.degree().unwrap_or(0) == 0 {
        return Ok(());
    }
    let base = factor(field, g, 1).map_err(|e| e.to_string())?;
    for seed in [2u64, 0xdead_beef, 77] {
        let other = factor(field, g, seed).map_err(|e| e.to_string())?;
        if other != base {
            return Err(format!("seed {seed} changed the factorization of {g:?}"));
        }
    }
    if base.expand(field) != *g {
        return Err(format!("factors of {g:?} do not multiply back"));
    }
    for (h, _) in &base.factors {
        if !field.is_one(h.leading().unwrap()) {
            return Err(format!("factor {h:?} of {g:?} is not monic"));
        }
        if !irreducible_by_enumeration(field, elems, h) {
            return Err(format!("factor {h:?} of {g:?} is reducible"));
        }
        if !is_irreducible(field, h).unwrap() {
            return Err(format!("is_irreducible rejects factor {h:?}"));
        }
    }
    Ok(())
}

fn random_poly<F: FiniteField>(
    rng: &mut ChaCha8Rng,
    field: &F,
    elems: &[F::Elem],
    deg: usize,
) -> FqPoly<F::Elem> {
    let mut c: Vec<F::Elem> = (0..=deg)
        .map(|_| elems[rng.gen_range(0..elems.len())].clone())
        .collect();
    while field.is_zero(&c[deg]) {
        c[deg] = elems[rng.gen_range(0..elems.len())].clone();
    }
    let g = field.poly_from(c);
    // repeated factors exercise the squarefree step
    if rng.gen_bool(0.25) && 2 * deg <= 12 {
        field.poly_mul(&g, &g)
    } else {
        g
    }
}

pub fn random_factorization_check(
    rng: &mut ChaCha8Rng,
    which: SmallField,
    max_deg: usize,
) -> Check {
    let deg = rng.gen_range(1..=max_deg);
    match which {
        SmallField::F2 | SmallField::F3 => {
            let p = if matches!(which, SmallField::F2) {
                2
            } else {
                3
            };
            let field = PrimeField::new(p).unwrap();
            let elems: Vec<u64> = (0..p).collect();
            let g = random_poly(rng, &field, &elems, deg);
            check_factorization(&field, &elems, &g)
        }
        SmallField::F4 => {
            let field = FqField::new(2, FqPoly::from_coeffs(vec![1, 1, 1])).unwrap();
            let elems: Vec<FqPoly<u64>> = [vec![], vec![1], vec![0, 1], vec![1, 1]]
                .into_iter()
                .map(FqPoly::from_coeffs)
                .collect();
            let g = random_poly(rng, &field, &elems, deg);
            check_factorization(&field, &elems, &g)
        }
    }
}

// ---------------------------------------------------------------- generator certificate

/// Characteristic polynomial of `θ^k` through power sums and Newton's
/// identities, independent of resultants.
pub fn charpoly_by_power_sums(f: &DensePolyZ, k: usize) -> DensePolyZ {
    let n = f.degree().unwrap();
    let c = |i: usize| f.coeff(i);
    // P_j = sum of j-th powers of the roots of f
    let top = n * k;
    let mut pw = vec![BigInt::zero(); top + 1];
    pw[0] = BigInt::from(n);
    for j in 1..=top {
        let mut s = if j <= n {
            -BigInt::from(j) * c(n - j)
        } else {
            BigInt::zero()
        };
        for i in 1..j.min(n + 1) {
            s -= c(n - i) * &pw[j - i];
        }
        pw[j] = s;
    }
    // elementary symmetric functions of the θ_i^k
    let q = |j: usize| &pw[j * k];
    let mut e = vec![BigInt::one()];
    for j in 1..=n {
        let mut s = BigInt::zero();
        for i in 1..=j {
            let term = &e[j - i] * q(i);
            if i % 2 == 1 {
                s += term;
            } else {
                s -= term;
            }
        }
        let (quot, rem) = s.div_rem(&BigInt::from(j));
        assert!(rem.is_zero(), "Newton identity division inexact");
        e.push(quot);
    }
    let mut coeffs = vec![BigInt::zero(); n + 1];
    for (j, ej) in e.iter().enumerate() {
        coeffs[n - j] = if j % 2 == 1 { -ej } else { ej.clone() };
    }
    DensePolyZ::new(coeffs)
}

pub fn abs_i64(v: &BigInt) -> i64 {
    v.abs().to_i64().unwrap_or(i64::MAX)
}

/// Certificate invariants re-derived from scratch: the Bezout relation, the
/// minimal polynomial via power sums, and Eisenstein by direct valuations.
pub fn generator_invariants(t: &Trinomial, cert: &AlphaCert) -> Check {
    let n = t.n() as i128;
    let (p, x, y) = (cert.p, cert.x, cert.y);
    if cert.valuation_b as i128 * x as i128 - n * y as i128 != 1 {
        return Err(format!("{t}: {} * {x} - {n} * {y} != 1", cert.valuation_b));
    }
    if valp(p, t.b()).unwrap() != Valuation::Finite(cert.valuation_b) {
        return Err(format!(
            "{t}: valuation_b {} is not v_{p}(b)",
            cert.valuation_b
        ));
    }
    let cp = charpoly_by_power_sums(&t.to_poly(), x as usize);
    let pp = BigInt::from(p);
    let mut coeffs = Vec::with_capacity(t.n() + 1);
    for i in 0..=t.n() {
        let scale = num_traits::pow(pp.clone(), y as usize * (t.n() - i));
        let (q, r) = cp.coeff(i).div_rem(&scale);
        if !r.is_zero() {
            return Err(format!(
                "{t}: coefficient {i} of the charpoly is not divisible by {p}^{}",
                y as usize * (t.n() - i)
            ));
        }
        coeffs.push(q);
    }
    let h = DensePolyZ::new(coeffs);
    if h != cert.h {
        return Err(format!(
            "{t}: minimal polynomial {} vs power-sum oracle {h}",
            cert.h
        ));
    }
    for i in 0..t.n() {
        let v = valp(p, &h.coeff(i)).unwrap();
        if v < Valuation::Finite(1) || (i == 0 && v != Valuation::Finite(1)) {
            return Err(format!(
                "{t}: coefficient {i} of {h} breaks Eisenstein at {p}"
            ));
        }
    }
    let expected = (t.n() as u64 - 1) * (cert.valuation_b - 1) / 2;
    if cert.index_bound != expected {
        return Err(format!(
            "{t}: index bound {} vs {expected}",
            cert.index_bound
        ));
    }
    let delta = disc_trinomial(t);
    let vd = valp(p, &delta).unwrap().finite().unwrap();
    if vd < 2 * expected {
        return Err(format!("{t}: v_{p}(disc) = {vd} < 2 * {expected}"));
    }
    Ok(())
}

/// A dyadic congruence hit must be backed by the engine at 2: more primes of
/// some residue degree than monic irreducibles of that degree over F_2, the
/// latter counted by enumeration.
pub fn dyadic_confirmed(r: u32, a: i64, b: i64) -> Check {
    let f = DensePolyZ::trinomial(1 << r, 1, &bi(a), &bi(b));
    let fact = factor_p(&f, 2).map_err(|e| e.to_string())?;
    let primes = if fact.regular {
        &fact.factors
    } else {
        &fact.certified_factors
    };
    for d in 1..=4u64 {
        let count = primes.iter().filter(|q| q.f == d).count() as u64;
        let available = monic_polys(2, d as usize)
            .filter(|g| irreducible_by_trial(g, 2))
            .count() as u64;
        if count > available {
            return Ok(());
        }
    }
    Err(format!(
        "x^{} + {a}x + {b}: no residue degree exceeds the irreducible count",
        1u64 << r
    ))
}
