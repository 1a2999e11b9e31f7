//! Ore's theorem: the p-index lower bound of a monic polynomial and, for
//! p-regular input, the ramification/residue-degree shape of `p Z_K`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::check_prime;
use crate::ffactor::{self, FqFactorization};
use crate::newton::{analyze_lift, mod_p_factors, PhiAnalysis, Side, FACTOR_SEED};
use crate::polyring::{DensePolyZ, FqPoly};

/// Position of a prime ideal in the evidence: φ_i, side j, residual factor s.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FactorLabel {
    pub phi: usize,
    pub side: usize,
    pub residual: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeIdealFactor {
    pub label: FactorLabel,
    /// Ramification index.
    pub e: u64,
    /// Residue degree.
    pub f: u64,
}

/// Factorization of one side's residual polynomial over F_φ.
#[derive(Clone, Debug)]
pub struct SideEvidence {
    pub side: Side,
    pub residual: FqPoly<FqPoly<u64>>,
    pub factorization: FqFactorization<FqPoly<u64>>,
    pub separable: bool,
}

#[derive(Clone, Debug)]
pub struct PhiEvidence {
    pub phi: DensePolyZ,
    pub multiplicity: u64,
    /// Polygon data; absent for simple factors (multiplicity 1).
    pub analysis: Option<PhiAnalysis>,
    pub sides: Vec<SideEvidence>,
    pub index: u64,
}

impl PhiEvidence {
    pub fn regular(&self) -> bool {
        self.sides.iter().all(|s| s.separable)
    }
}

#[derive(Clone, Debug)]
pub struct OreFactorization {
    pub p: u64,
    pub regular: bool,
    /// `Σ_i ind_{φ_i}(F)`, a lower bound for `ν_p` of the index of θ.
    pub index_lower_bound: u64,
    /// Complete shape of `p Z_K`; empty unless `regular`.
    pub factors: Vec<PrimeIdealFactor>,
    /// Primes contributed by simple factors and by sides with separable
    /// residual polynomial. These exist whether or not the whole input is
    /// regular.
    pub certified_factors: Vec<PrimeIdealFactor>,
    pub evidence: Vec<PhiEvidence>,
}

impl OreFactorization {
    /// `Σ e f` over the complete shape.
    pub fn degree_sum(&self) -> u64 {
        self.factors.iter().map(|q| q.e * q.f).sum()
    }

    /// Shape as sorted `(e, f)` pairs.
    pub fn shape(&self) -> Vec<(u64, u64)> {
        let mut s: Vec<_> = self.factors.iter().map(|q| (q.e, q.f)).collect();
        s.sort_unstable();
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexBound {
    pub bound: u64,
    /// Bound equals `ν_p` of the index (p-regular input).
    pub exact: bool,
}

fn analyze_factor(
    f: &DensePolyZ,
    i: usize,
    phi: DensePolyZ,
    mult: u64,
    p: u64,
) -> Result<(PhiEvidence, Vec<PrimeIdealFactor>)> {
    let deg_phi = phi.degree().unwrap() as u64;
    if mult == 1 {
        let q = PrimeIdealFactor {
            label: FactorLabel {
                phi: i,
                side: 0,
                residual: 0,
            },
            e: 1,
            f: deg_phi,
        };
        let ev = PhiEvidence {
            phi,
            multiplicity: 1,
            analysis: None,
            sides: Vec::new(),
            index: 0,
        };
        return Ok((ev, vec![q]));
    }
    let analysis = analyze_lift(f, &phi, mult, p)?;
    let phi = analysis.phi.clone();
    let mut certified = Vec::new();
    let mut sides = Vec::with_capacity(analysis.residuals.len());
    for (j, (res, &separable)) in analysis
        .residuals
        .iter()
        .zip(&analysis.separable)
        .enumerate()
    {
        let factorization = ffactor::factor(&analysis.residue_field, &res.poly, FACTOR_SEED)?;
        if separable {
            for (s, (psi, _)) in factorization.factors.iter().enumerate() {
                certified.push(PrimeIdealFactor {
                    label: FactorLabel {
                        phi: i,
                        side: j,
                        residual: s,
                    },
                    e: res.side.e,
                    f: deg_phi * psi.degree().unwrap() as u64,
                });
            }
        }
        sides.push(SideEvidence {
            side: res.side,
            residual: res.poly.clone(),
            factorization,
            separable,
        });
    }
    let ev = PhiEvidence {
        phi,
        multiplicity: mult,
        index: analysis.index,
        analysis: Some(analysis),
        sides,
    };
    Ok((ev, certified))
}

pub fn factor_p(f: &DensePolyZ, p: u64) -> Result<OreFactorization> {
    check_prime(p)?;
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if f.degree().unwrap_or(0) == 0 {
        return Err(Error::DegreeTooSmall(
            "factor_p needs a non-constant polynomial",
        ));
    }
    let phis = mod_p_factors(f, p)?;
    let per_phi = phis
        .into_par_iter()
        .enumerate()
        .map(|(i, (phi, mult))| analyze_factor(f, i, phi, mult, p))
        .collect::<Result<Vec<_>>>()?;
    let mut evidence = Vec::with_capacity(per_phi.len());
    let mut certified_factors = Vec::new();
    for (ev, qs) in per_phi {
        evidence.push(ev);
        certified_factors.extend(qs);
    }
    let regular = evidence.iter().all(PhiEvidence::regular);
    let index_lower_bound = evidence.iter().map(|e| e.index).sum();
    let factors = if regular {
        certified_factors.clone()
    } else {
        Vec::new()
    };
    let out = OreFactorization {
        p,
        regular,
        index_lower_bound,
        factors,
        certified_factors,
        evidence,
    };
    if out.regular && out.degree_sum() != f.degree().unwrap() as u64 {
        return Err(Error::InternalContradiction(format!(
            "sum of e*f is {} for a degree {} polynomial",
            out.degree_sum(),
            f.degree().unwrap()
        )));
    }
    Ok(out)
}

pub fn index_bound(f: &DensePolyZ, p: u64) -> Result<IndexBound> {
    let fact = factor_p(f, p)?;
    Ok(IndexBound {
        bound: fact.index_lower_bound,
        exact: fact.regular,
    })
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;

    use super::*;

    fn tri(n: usize, m: usize, a: i64, b: i64) -> DensePolyZ {
        DensePolyZ::trinomial(n, m, &BigInt::from(a), &BigInt::from(b))
    }

    #[test]
    fn index_bounds() {
        assert_eq!(
            index_bound(&tri(8, 1, 8, 8), 2).unwrap(),
            IndexBound {
                bound: 7,
                exact: true
            }
        );
        assert_eq!(
            index_bound(&tri(8, 1, 12, 3), 2).unwrap(),
            IndexBound {
                bound: 5,
                exact: true
            }
        );
        assert_eq!(
            index_bound(&tri(8, 1, 12, 3), 5).unwrap(),
            IndexBound {
                bound: 0,
                exact: true
            }
        );
        assert!(index_bound(&tri(8, 1, 12, 3), 4).is_err());
    }

    #[test]
    fn shapes() {
        let fact = factor_p(&tri(8, 1, 12, 3), 2).unwrap();
        assert!(fact.regular);
        assert_eq!(fact.shape(), vec![(1, 1), (3, 1), (4, 1)]);

        let dedekind = DensePolyZ::from_i64s(&[8, -2, 1, 1]);
        let fact = factor_p(&dedekind, 2).unwrap();
        assert!(fact.regular);
        assert_eq!(fact.shape(), vec![(1, 1), (1, 1), (1, 1)]);

        let fact = factor_p(&tri(8, 1, 8, 8), 2).unwrap();
        assert_eq!(fact.shape(), vec![(8, 1)]);
    }

    #[test]
    fn irregular_input_keeps_evidence() {
        let f = DensePolyZ::from_i64s(&[4, 0, 0, 0, 1]);
        let fact = factor_p(&f, 2).unwrap();
        assert!(!fact.regular);
        assert!(fact.factors.is_empty());
        assert!(fact.certified_factors.is_empty());
        assert_eq!(fact.evidence.len(), 1);
        assert!(!fact.evidence[0].sides[0].separable);
        assert_eq!(fact.index_lower_bound, 2);
    }

    #[test]
    fn quadratic_residue_field() {
        // (x^2+x+1)^2 + 2 has phi = x^2+x+1 with l = 2 and residue field F_4
        let f = &tri(2, 1, 1, 1).pow(2) + &DensePolyZ::from_i64s(&[2]);
        let fact = factor_p(&f, 2).unwrap();
        assert_eq!(fact.evidence.len(), 1);
        assert_eq!(fact.evidence[0].phi, tri(2, 1, 1, 1));
        assert!(fact.regular);
        assert_eq!(fact.shape(), vec![(2, 2)]);
    }
}
