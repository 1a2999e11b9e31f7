//! Batch verdicts over boxes of `(r, a, b)` for `x^(2^r) + a x^m + b`.

use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monogenity::{dyadic_case, verdict, Trinomial, VerdictKind, VerdictOptions};
use crate::ore::index_bound;

/// Verdict kind recorded for inputs that are invalid or not certified
/// irreducible.
pub const SKIPPED: &str = "skipped";

/// One scanned tuple. Column order is the CSV column order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub r: u32,
    pub m: usize,
    pub a: i64,
    pub b: i64,
    pub verdict: String,
    /// Congruence case hit at 2, when `m = 1`.
    pub theorem_case: Option<String>,
    pub witness_p: Option<u64>,
    pub witness_d: Option<u64>,
    pub index_lower_bound_2: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub runtime_micros: Option<u64>,
}

/// Inclusive integer range parsed from `lo:hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub lo: i64,
    pub hi: i64,
}

impl Span {
    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    fn iter(self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }
}

impl std::str::FromStr for Span {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::MalformedInput(format!("range {s:?} is not lo:hi"));
        let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
        Ok(Span {
            lo: lo.trim().parse().map_err(|_| bad())?,
            hi: hi.trim().parse().map_err(|_| bad())?,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScanConfig {
    pub r: Span,
    pub a: Span,
    pub b: Span,
    pub m: usize,
    /// Worker threads; 0 lets rayon choose.
    pub jobs: usize,
    pub timings: bool,
    pub verdict: VerdictOptions,
}

/// All tuples in lexicographic `(r, a, b)` order.
pub fn tuples(cfg: &ScanConfig) -> Result<Vec<(u32, i64, i64)>> {
    for (name, span) in [("r", cfg.r), ("a", cfg.a), ("b", cfg.b)] {
        if span.is_empty() {
            return Err(Error::OutOfRange(format!(
                "empty {name} range {}:{}",
                span.lo, span.hi
            )));
        }
    }
    if cfg.r.lo < 1 || cfg.r.hi > 20 {
        return Err(Error::OutOfRange(format!(
            "r range {}:{} outside 1:20",
            cfg.r.lo, cfg.r.hi
        )));
    }
    let mut out = Vec::new();
    for r in cfg.r.iter() {
        for a in cfg.a.iter() {
            for b in cfg.b.iter() {
                out.push((r as u32, a, b));
            }
        }
    }
    Ok(out)
}

fn skipped(r: u32, m: usize, a: i64, b: i64, theorem_case: Option<String>) -> ScanRow {
    ScanRow {
        r,
        m,
        a,
        b,
        verdict: SKIPPED.into(),
        theorem_case,
        witness_p: None,
        witness_d: None,
        index_lower_bound_2: None,
        runtime_micros: None,
    }
}

/// Verdict row for one tuple.
pub fn scan_one(r: u32, m: usize, a: i64, b: i64, opts: &VerdictOptions) -> Result<ScanRow> {
    let (ab, bb) = (BigInt::from(a), BigInt::from(b));
    let theorem_case = if m == 1 {
        dyadic_case(r, &ab, &bb).map(|ev| ev.case.to_string())
    } else {
        None
    };
    let Ok(t) = Trinomial::two_power(r, m, ab, bb) else {
        return Ok(skipped(r, m, a, b, theorem_case));
    };
    let opts = VerdictOptions {
        assume_irreducible: false,
        ..*opts
    };
    let v = verdict(&t, &opts)?;
    if v.irreducibility.is_none() {
        return Ok(skipped(r, m, a, b, theorem_case));
    }
    let (witness_p, witness_d) = match &v.kind {
        VerdictKind::FieldNotMonogenic { witness, .. } => (Some(witness.p), Some(witness.d)),
        VerdictKind::PolyNotMonogenicFieldMonogenic(c)
        | VerdictKind::PolyNotMonogenicFieldConditional(c) => (Some(c.p), None),
        VerdictKind::Inconclusive { .. } => (None, None),
    };
    Ok(ScanRow {
        r,
        m,
        a,
        b,
        verdict: v.kind.name().into(),
        theorem_case,
        witness_p,
        witness_d,
        index_lower_bound_2: Some(index_bound(&t.to_poly(), 2)?.bound),
        runtime_micros: None,
    })
}

/// Scans the box on `cfg.jobs` threads. Rows come back in tuple order.
pub fn scan(cfg: &ScanConfig) -> Result<Vec<ScanRow>> {
    let work = tuples(cfg)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Error::MalformedInput(format!("thread pool: {e}")))?;
    pool.install(|| {
        work.par_iter()
            .map(|&(r, a, b)| {
                let start = Instant::now();
                let mut row = scan_one(r, cfg.m, a, b, &cfg.verdict)?;
                if cfg.timings {
                    row.runtime_micros = Some(start.elapsed().as_micros() as u64);
                }
                Ok(row)
            })
            .collect()
    })
}
