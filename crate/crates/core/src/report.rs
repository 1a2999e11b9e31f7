//! Serializable analysis reports and their plain-text projection.
//!
//! Polynomial coefficients, `a`, `b` and the discriminant are carried as
//! decimal strings so that no consumer loses precision.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exactnum::{abs_biguint, check_prime, digest, trial_factor};
use crate::monogenity::{
    disc_trinomial, square_dividing_primes, verdict, AlphaCert, IrreducibilityCertificate,
    MonogenityVerdict, Trinomial, VerdictKind, VerdictOptions, DISC_FORMULA_READING,
};
use crate::ore::{factor_p, OreFactorization, PrimeIdealFactor};
use crate::polyring::{discriminant, DensePolyZ, FqPoly};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputEcho {
    pub n: usize,
    pub m: usize,
    pub a: String,
    pub b: String,
    pub polynomial: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrreducibilityRecord {
    /// `eisenstein`, `one_sided_polygon`, `irreducible_mod_p`, or absent.
    pub route: Option<String>,
    pub prime: Option<u64>,
    pub description: String,
    pub assumed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscriminantPrime {
    pub p: u64,
    pub valuation: u64,
    /// `p^k * cofactor` rendering of the discriminant.
    pub digest: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscriminantRecord {
    pub value: String,
    pub formula: String,
    /// Closed form agrees with `(-1)^(n(n-1)/2) Res(F, F')`.
    pub oracle_agrees: bool,
    /// Primes found by bounded trial division.
    pub primes: Vec<DiscriminantPrime>,
    /// Part of `|Δ|` left unfactored.
    pub cofactor: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideRecord {
    pub s: usize,
    pub u_s: u64,
    pub l: usize,
    pub h: u64,
    pub e: u64,
    pub d: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualFactorRecord {
    pub factor: String,
    pub multiplicity: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualRecord {
    /// Coefficients in `y`, each an element of F_φ given by its
    /// coefficient list in `t` over F_p.
    pub coefficients: Vec<Vec<u64>>,
    pub rendered: String,
    pub separable: bool,
    pub factors: Vec<ResidualFactorRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiRecord {
    pub phi: String,
    pub phi_coefficients: Vec<String>,
    pub multiplicity: u64,
    pub vertices: Vec<(usize, u64)>,
    pub sides: Vec<SideRecord>,
    pub residuals: Vec<ResidualRecord>,
    pub index: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeIdealRecord {
    pub phi: usize,
    pub side: usize,
    pub residual: usize,
    pub e: u64,
    pub f: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeEvidence {
    pub p: u64,
    pub regular: bool,
    pub index_lower_bound: u64,
    pub index_exact: bool,
    pub phis: Vec<PhiRecord>,
    /// Complete shape; empty when not regular.
    pub shape: Vec<PrimeIdealRecord>,
    pub certified: Vec<PrimeIdealRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub p: u64,
    pub d: u64,
    pub primes_of_degree: u64,
    pub irreducible_count: String,
    pub complete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaRecord {
    pub p: u64,
    pub x: u64,
    pub y: i64,
    pub valuation_b: u64,
    pub minimal_polynomial: Vec<String>,
    pub minimal_polynomial_text: String,
    pub eisenstein: bool,
    pub deltap_status: String,
    pub index_bound: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexBoundRecord {
    pub p: u64,
    pub bound: u64,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub kind: String,
    pub prime: Option<u64>,
    pub case: Option<String>,
    pub congruence: Option<String>,
    pub witness: Option<WitnessRecord>,
    pub alpha: Option<AlphaRecord>,
    pub reason: Option<String>,
    pub index_bounds: Vec<IndexBoundRecord>,
    pub trail: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub input: InputEcho,
    pub irreducibility: IrreducibilityRecord,
    pub discriminant: DiscriminantRecord,
    pub primes: Vec<PrimeEvidence>,
    pub verdict: VerdictRecord,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AnalyzeOptions {
    /// Restrict engine evidence to this prime.
    pub prime: Option<u64>,
    pub verdict: VerdictOptions,
}

fn strings(p: &DensePolyZ) -> Vec<String> {
    p.coeffs().iter().map(BigInt::to_string).collect()
}

fn render_fp(c: &[u64], var: &str) -> String {
    let terms: Vec<String> = c
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &v)| v != 0)
        .map(|(i, &v)| match (i, v) {
            (0, v) => v.to_string(),
            (1, 1) => var.to_string(),
            (1, v) => format!("{v}{var}"),
            (i, 1) => format!("{var}^{i}"),
            (i, v) => format!("{v}{var}^{i}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn render_residual(poly: &FqPoly<FqPoly<u64>>) -> String {
    let terms: Vec<String> = poly
        .coeffs()
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| {
            let inner = render_fp(c.coeffs(), "t");
            let coeff = if c.coeffs().iter().filter(|&&v| v != 0).count() > 1 {
                format!("({inner})")
            } else {
                inner
            };
            match i {
                0 => coeff,
                _ if coeff == "1" => {
                    if i == 1 {
                        "y".into()
                    } else {
                        format!("y^{i}")
                    }
                }
                1 => format!("{coeff}y"),
                _ => format!("{coeff}y^{i}"),
            }
        })
        .collect();
    terms.join(" + ")
}

fn ideal_records(qs: &[PrimeIdealFactor]) -> Vec<PrimeIdealRecord> {
    qs.iter()
        .map(|q| PrimeIdealRecord {
            phi: q.label.phi,
            side: q.label.side,
            residual: q.label.residual,
            e: q.e,
            f: q.f,
        })
        .collect()
}

pub fn prime_evidence(fact: &OreFactorization) -> PrimeEvidence {
    let phis = fact
        .evidence
        .iter()
        .map(|ev| {
            let vertices = ev
                .analysis
                .as_ref()
                .map(|a| a.polygon.vertices())
                .unwrap_or_default();
            let sides = ev
                .sides
                .iter()
                .map(|s| SideRecord {
                    s: s.side.start.0,
                    u_s: s.side.start.1,
                    l: s.side.length,
                    h: s.side.h,
                    e: s.side.e,
                    d: s.side.degree,
                })
                .collect();
            let residuals = ev
                .sides
                .iter()
                .map(|s| ResidualRecord {
                    coefficients: s
                        .residual
                        .coeffs()
                        .iter()
                        .map(|c| c.coeffs().to_vec())
                        .collect(),
                    rendered: render_residual(&s.residual),
                    separable: s.separable,
                    factors: s
                        .factorization
                        .factors
                        .iter()
                        .map(|(g, m)| ResidualFactorRecord {
                            factor: render_residual(g),
                            multiplicity: *m,
                        })
                        .collect(),
                })
                .collect();
            PhiRecord {
                phi: ev.phi.to_string(),
                phi_coefficients: strings(&ev.phi),
                multiplicity: ev.multiplicity,
                vertices,
                sides,
                residuals,
                index: ev.index,
            }
        })
        .collect();
    PrimeEvidence {
        p: fact.p,
        regular: fact.regular,
        index_lower_bound: fact.index_lower_bound,
        index_exact: fact.regular,
        phis,
        shape: ideal_records(&fact.factors),
        certified: ideal_records(&fact.certified_factors),
    }
}

fn alpha_record(c: &AlphaCert) -> AlphaRecord {
    AlphaRecord {
        p: c.p,
        x: c.x,
        y: c.y,
        valuation_b: c.valuation_b,
        minimal_polynomial: strings(&c.h),
        minimal_polynomial_text: c.h.to_string(),
        eisenstein: c.eisenstein_ok,
        deltap_status: c.deltap_status.to_string(),
        index_bound: c.index_bound,
    }
}

pub fn verdict_record(v: &MonogenityVerdict) -> VerdictRecord {
    let mut rec = VerdictRecord {
        kind: v.kind.name().to_string(),
        prime: v.kind.prime(),
        case: None,
        congruence: None,
        witness: None,
        alpha: None,
        reason: None,
        index_bounds: Vec::new(),
        trail: v.trail.clone(),
    };
    match &v.kind {
        VerdictKind::FieldNotMonogenic {
            witness,
            case,
            complete,
        } => {
            rec.case = case.map(|c| c.case.to_string());
            rec.congruence = case.map(|c| c.to_string());
            rec.witness = Some(WitnessRecord {
                p: witness.p,
                d: witness.d,
                primes_of_degree: witness.primes_of_degree,
                irreducible_count: witness.irreducible_count.to_string(),
                complete: *complete,
            });
        }
        VerdictKind::PolyNotMonogenicFieldMonogenic(c)
        | VerdictKind::PolyNotMonogenicFieldConditional(c) => {
            rec.alpha = Some(alpha_record(c));
        }
        VerdictKind::Inconclusive {
            reason,
            index_bounds,
        } => {
            rec.reason = Some(reason.clone());
            rec.index_bounds = index_bounds
                .iter()
                .map(|(p, b)| IndexBoundRecord {
                    p: *p,
                    bound: b.bound,
                    exact: b.exact,
                })
                .collect();
        }
    }
    rec
}

fn irreducibility_record(v: &MonogenityVerdict) -> IrreducibilityRecord {
    let (route, prime) = match v.irreducibility {
        Some(IrreducibilityCertificate::Eisenstein { p }) => (Some("eisenstein"), Some(p)),
        Some(IrreducibilityCertificate::OneSidedPolygon { p, .. }) => {
            (Some("one_sided_polygon"), Some(p))
        }
        Some(IrreducibilityCertificate::IrreducibleModP { p }) => {
            (Some("irreducible_mod_p"), Some(p))
        }
        None => (None, None),
    };
    let description = match (&v.irreducibility, v.assumed_irreducible) {
        (Some(c), _) => c.to_string(),
        (None, true) => "assumed by caller".into(),
        (None, false) => "not proven".into(),
    };
    IrreducibilityRecord {
        route: route.map(str::to_string),
        prime,
        description,
        assumed: v.assumed_irreducible,
    }
}

pub fn discriminant_record(t: &Trinomial, bound: u64) -> Result<DiscriminantRecord> {
    let delta = disc_trinomial(t);
    let oracle_agrees = discriminant(&t.to_poly())? == delta;
    let (factors, cofactor) = trial_factor(&abs_biguint(&delta), bound);
    let primes = factors
        .iter()
        .map(|&(p, e)| DiscriminantPrime {
            p,
            valuation: e as u64,
            digest: digest(p, &delta),
        })
        .collect();
    Ok(DiscriminantRecord {
        value: delta.to_string(),
        formula: DISC_FORMULA_READING.to_string(),
        oracle_agrees,
        primes,
        cofactor: cofactor.to_string(),
    })
}

/// Full analysis of one trinomial: discriminant, verdict and engine
/// evidence at the primes that matter (or only at `opts.prime`).
pub fn analyze(t: &Trinomial, opts: &AnalyzeOptions) -> Result<AnalysisReport> {
    if let Some(p) = opts.prime {
        check_prime(p)?;
    }
    let v = verdict(t, &opts.verdict)?;
    let disc = discriminant_record(t, opts.verdict.sf_bound)?;
    let delta = disc_trinomial(t);
    let primes: Vec<u64> = match opts.prime {
        Some(p) => vec![p],
        None if delta.is_zero() => Vec::new(),
        None => {
            let mut ps = square_dividing_primes(&delta, opts.verdict.sf_bound);
            ps.extend(v.kind.prime());
            ps.sort_unstable();
            ps.dedup();
            ps
        }
    };
    let f = t.to_poly();
    let evidence = primes
        .iter()
        .map(|&p| factor_p(&f, p).map(|fact| prime_evidence(&fact)))
        .collect::<Result<Vec<_>>>()?;
    Ok(AnalysisReport {
        schema: SCHEMA_VERSION,
        input: InputEcho {
            n: t.n(),
            m: t.m(),
            a: t.a().to_string(),
            b: t.b().to_string(),
            polynomial: t.to_string(),
        },
        irreducibility: irreducibility_record(&v),
        discriminant: disc,
        primes: evidence,
        verdict: verdict_record(&v),
    })
}

impl AnalysisReport {
    /// Shape `(e, f)` pairs at `p`, sorted; empty when absent or irregular.
    pub fn shape_at(&self, p: u64) -> Vec<(u64, u64)> {
        let mut out: Vec<(u64, u64)> = self
            .primes
            .iter()
            .filter(|e| e.p == p)
            .flat_map(|e| e.shape.iter().map(|q| (q.e, q.f)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Plain-text projection with ASCII polygon tables.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let i = &self.input;
        let _ = writeln!(
            s,
            "F(x) = {}   (n = {}, m = {}, a = {}, b = {})",
            i.polynomial, i.n, i.m, i.a, i.b
        );
        let _ = writeln!(s, "irreducibility: {}", self.irreducibility.description);
        let d = &self.discriminant;
        let _ = writeln!(s, "discriminant: {}", d.value);
        let _ = writeln!(s, "  closed form: {}", d.formula);
        let _ = writeln!(
            s,
            "  resultant check: {}",
            if d.oracle_agrees {
                "agrees"
            } else {
                "DISAGREES"
            }
        );
        for dp in &d.primes {
            let _ = writeln!(
                s,
                "  p = {:<8} v_p = {:<4} {}",
                dp.p, dp.valuation, dp.digest
            );
        }
        if d.cofactor != "1" && d.cofactor != "0" {
            let _ = writeln!(s, "  unfactored cofactor: {}", d.cofactor);
        }
        for pe in &self.primes {
            let _ = writeln!(s);
            let exact = if pe.index_exact {
                "exact"
            } else {
                "lower bound"
            };
            let _ = writeln!(
                s,
                "prime {}: {}, ind = {} ({exact})",
                pe.p,
                if pe.regular { "regular" } else { "not regular" },
                pe.index_lower_bound
            );
            for (k, phi) in pe.phis.iter().enumerate() {
                let _ = writeln!(
                    s,
                    "  phi_{} = {}   multiplicity {}   ind_phi = {}",
                    k + 1,
                    phi.phi,
                    phi.multiplicity,
                    phi.index
                );
                if phi.sides.is_empty() {
                    continue;
                }
                let verts: Vec<String> = phi
                    .vertices
                    .iter()
                    .map(|(x, y)| format!("({x},{y})"))
                    .collect();
                let _ = writeln!(s, "    vertices: {}", verts.join(" "));
                let _ = writeln!(
                    s,
                    "    +------+-----+-----+-----+-----+-----+-----+-----------+"
                );
                let _ = writeln!(
                    s,
                    "    | side |  s  | u_s |  l  |  h  |  e  |  d  | separable |"
                );
                let _ = writeln!(
                    s,
                    "    +------+-----+-----+-----+-----+-----+-----+-----------+"
                );
                for (j, (sd, res)) in phi.sides.iter().zip(&phi.residuals).enumerate() {
                    let _ = writeln!(
                        s,
                        "    | {:>4} | {:>3} | {:>3} | {:>3} | {:>3} | {:>3} | {:>3} | {:>9} |",
                        j + 1,
                        sd.s,
                        sd.u_s,
                        sd.l,
                        sd.h,
                        sd.e,
                        sd.d,
                        if res.separable { "yes" } else { "no" }
                    );
                }
                let _ = writeln!(
                    s,
                    "    +------+-----+-----+-----+-----+-----+-----+-----------+"
                );
                for (j, res) in phi.residuals.iter().enumerate() {
                    let _ = writeln!(s, "    R_{}(y) = {}", j + 1, res.rendered);
                }
            }
            let list = |qs: &[PrimeIdealRecord]| {
                qs.iter()
                    .map(|q| format!("(e={},f={})", q.e, q.f))
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            if pe.regular {
                let _ = writeln!(s, "  shape: {}", list(&pe.shape));
            } else if !pe.certified.is_empty() {
                let _ = writeln!(s, "  certified primes: {}", list(&pe.certified));
            }
        }
        let v = &self.verdict;
        let _ = writeln!(s);
        match v.prime {
            Some(p) => {
                let _ = writeln!(s, "verdict: {} (p = {p})", v.kind);
            }
            None => {
                let _ = writeln!(s, "verdict: {}", v.kind);
            }
        }
        if let Some(c) = &v.congruence {
            let _ = writeln!(s, "  congruence: {c}");
        }
        if let Some(w) = &v.witness {
            let _ = writeln!(
                s,
                "  witness: P_{d} = {} > N_{}({d}) = {}{}",
                w.primes_of_degree,
                w.p,
                w.irreducible_count,
                if w.complete {
                    ""
                } else {
                    " (certified primes only)"
                },
                d = w.d
            );
        }
        if let Some(a) = &v.alpha {
            let _ = writeln!(s, "  alpha = theta^{}/{}^{}", a.x, a.p, a.y);
            let _ = writeln!(s, "  minimal polynomial: {}", a.minimal_polynomial_text);
            let _ = writeln!(s, "  {}-Eisenstein: {}", a.p, a.eisenstein);
            let _ = writeln!(s, "  p-free discriminant: {}", a.deltap_status);
        }
        if let Some(r) = &v.reason {
            let _ = writeln!(s, "  reason: {r}");
        }
        for b in &v.index_bounds {
            let _ = writeln!(
                s,
                "  index bound at {}: {}{}",
                b.p,
                b.bound,
                if b.exact { " (exact)" } else { "" }
            );
        }
        let _ = writeln!(s, "trail:");
        for step in &v.trail {
            let _ = writeln!(s, "  - {step}");
        }
        s
    }
}
