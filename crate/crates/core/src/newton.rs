//! φ-Newton polygons: point clouds of φ-adic developments, principal
//! polygons with exact slopes, residue coefficients, residual polynomials,
//! φ-indices and p-regularity.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{binom_val2, valp, Valuation};
use crate::ffactor;
use crate::polyring::{
    phi_expand, DensePolyZ, FqField, FqPoly, PhiDevelopment, PolyArith, PrimeField,
};

/// Seed handed to the finite-field factorizer. Results are seed-independent.
pub(crate) const FACTOR_SEED: u64 = 0x7472_696e_6f67_656e;

/// A side of slope `-h/e` starting at `start`, of length `degree * e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Side {
    pub start: (usize, u64),
    pub length: usize,
    pub h: u64,
    pub e: u64,
    pub degree: u64,
}

impl Side {
    pub fn end(&self) -> (usize, u64) {
        (
            self.start.0 + self.length,
            self.start.1 - self.degree * self.h,
        )
    }

    /// Height of the side at abscissa `x`, as the exact fraction `num / e`.
    fn height_times_e(&self, x: usize) -> i128 {
        self.start.1 as i128 * self.e as i128 - self.h as i128 * (x - self.start.0) as i128
    }

    fn covers(&self, x: usize) -> bool {
        x >= self.start.0 && x <= self.start.0 + self.length
    }
}

/// Negative-slope part of the lower convex envelope of a point cloud.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrincipalPolygon {
    /// Abscissa of the first vertex; nonzero only when `a_0 = 0`.
    pub start: usize,
    /// Sides in strictly increasing slope order.
    pub sides: Vec<Side>,
    /// Abscissa of the leftmost point on the horizontal axis.
    pub length: usize,
    /// Hull edges with slope >= 0 that were computed and dropped.
    pub discarded_nonnegative: usize,
}

impl PrincipalPolygon {
    pub fn vertices(&self) -> Vec<(usize, u64)> {
        match self.sides.first() {
            None => vec![(self.start, 0)],
            Some(first) => std::iter::once(first.start)
                .chain(self.sides.iter().map(Side::end))
                .collect(),
        }
    }

    fn side_at(&self, x: usize) -> Option<&Side> {
        self.sides.iter().find(|s| s.covers(x))
    }
}

pub fn point_cloud(dev: &PhiDevelopment) -> Vec<(usize, u64)> {
    dev.vals
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.finite().map(|u| (i, u)))
        .collect()
}

fn cross(o: (usize, u64), a: (usize, u64), b: (usize, u64)) -> i128 {
    let (ox, oy) = (o.0 as i128, o.1 as i128);
    (a.0 as i128 - ox) * (b.1 as i128 - oy) - (a.1 as i128 - oy) * (b.0 as i128 - ox)
}

pub fn principal_polygon(cloud: &[(usize, u64)]) -> Result<PrincipalPolygon> {
    let mut pts = cloud.to_vec();
    pts.sort_unstable();
    pts.dedup_by_key(|p| p.0);
    if pts.len() != cloud.len() {
        return Err(Error::MalformedInput(
            "repeated abscissa in point cloud".into(),
        ));
    }
    if !pts.iter().any(|p| p.1 == 0) {
        return Err(Error::MalformedInput(
            "no point on the horizontal axis".into(),
        ));
    }
    let mut hull: Vec<(usize, u64)> = Vec::with_capacity(pts.len());
    for &pt in &pts {
        // Collinear points are popped so every side is maximal.
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], pt) <= 0 {
            hull.pop();
        }
        hull.push(pt);
    }
    let mut sides = Vec::new();
    let mut discarded = 0;
    for w in hull.windows(2) {
        let ((x0, y0), (x1, y1)) = (w[0], w[1]);
        if y1 >= y0 {
            discarded += 1;
            continue;
        }
        let l = (x1 - x0) as u64;
        let dh = y0 - y1;
        let g = l.gcd(&dh);
        sides.push(Side {
            start: (x0, y0),
            length: x1 - x0,
            h: dh / g,
            e: l / g,
            degree: g,
        });
    }
    let start = hull[0].0;
    let length = sides.last().map_or(start, |s| s.end().0);
    Ok(PrincipalPolygon {
        start,
        sides,
        length,
        discarded_nonnegative: discarded,
    })
}

/// `deg φ` times the lattice points `(x, y)` with `x >= 1`, `y >= 1` on or
/// under the polygon.
pub fn phi_index(polygon: &PrincipalPolygon, deg_phi: usize) -> u64 {
    let mut count = 0u64;
    for x in polygon.start.max(1)..=polygon.length {
        let y = match polygon.side_at(x) {
            Some(side) => side.height_times_e(x).div_euclid(side.e as i128) as u64,
            None => polygon.sides.first().map_or(0, |s| s.start.1),
        };
        count += y;
    }
    count * deg_phi as u64
}

pub fn residue_coefficient(
    dev: &PhiDevelopment,
    polygon: &PrincipalPolygon,
    field: &FqField,
    i: usize,
) -> Result<FqPoly<u64>> {
    if i > polygon.length {
        return Err(Error::OutOfRange(format!(
            "abscissa {i} beyond polygon length {}",
            polygon.length
        )));
    }
    let Valuation::Finite(u) = dev.vals[i] else {
        return Ok(FqPoly::zero());
    };
    let on_polygon = match polygon.side_at(i) {
        Some(side) => u as i128 * side.e as i128 == side.height_times_e(i),
        None => i == polygon.start,
    };
    if !on_polygon {
        return Ok(FqPoly::zero());
    }
    let scale = BigInt::from(dev.p).pow(u as u32);
    let unit = DensePolyZ::new(dev.terms[i].coeffs().iter().map(|c| c / &scale).collect());
    Ok(field.elem_from_zpoly(&unit))
}

/// Residual polynomial of one side over the residue field F_φ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualPolynomial {
    pub side: Side,
    pub poly: FqPoly<FqPoly<u64>>,
}

pub fn residual_poly(
    dev: &PhiDevelopment,
    polygon: &PrincipalPolygon,
    field: &FqField,
    side_index: usize,
) -> Result<ResidualPolynomial> {
    let side = *polygon
        .sides
        .get(side_index)
        .ok_or_else(|| Error::OutOfRange(format!("side {side_index}")))?;
    let coeffs = (0..=side.degree)
        .map(|j| residue_coefficient(dev, polygon, field, side.start.0 + (j * side.e) as usize))
        .collect::<Result<Vec<_>>>()?;
    debug_assert!(!coeffs[0].is_zero() && !coeffs[coeffs.len() - 1].is_zero());
    Ok(ResidualPolynomial {
        side,
        poly: field.poly_from(coeffs),
    })
}

/// Everything the polygon engine derives from one irreducible factor φ̄.
#[derive(Clone, Debug)]
pub struct PhiAnalysis {
    pub phi: DensePolyZ,
    pub multiplicity: u64,
    pub development: PhiDevelopment,
    pub polygon: PrincipalPolygon,
    pub residue_field: FqField,
    pub residuals: Vec<ResidualPolynomial>,
    pub separable: Vec<bool>,
    pub index: u64,
}

impl PhiAnalysis {
    pub fn regular(&self) -> bool {
        self.separable.iter().all(|&s| s)
    }
}

/// Runs the polygon engine for a monic lift `phi` of an irreducible factor
/// of `F mod p`.
pub fn analyze_phi(
    f: &DensePolyZ,
    phi: &DensePolyZ,
    multiplicity: u64,
    p: u64,
) -> Result<PhiAnalysis> {
    let development = phi_expand(f, phi, p)?;
    if development.vals[0] == Valuation::Infinity {
        return Err(Error::DivisibleByPhi(phi.to_string()));
    }
    let polygon = principal_polygon(&point_cloud(&development))?;
    if polygon.length as u64 != multiplicity {
        return Err(Error::InternalContradiction(format!(
            "polygon length {} differs from multiplicity {multiplicity} of {phi}",
            polygon.length
        )));
    }
    let residue_field = FqField::residue_field(p, phi)?;
    let residuals = (0..polygon.sides.len())
        .map(|k| residual_poly(&development, &polygon, &residue_field, k))
        .collect::<Result<Vec<_>>>()?;
    let separable = residuals
        .iter()
        .map(|r| ffactor::is_separable(&residue_field, &r.poly))
        .collect::<Result<Vec<_>>>()?;
    let index = phi_index(&polygon, phi.degree().unwrap());
    Ok(PhiAnalysis {
        phi: phi.clone(),
        multiplicity,
        development,
        polygon,
        residue_field,
        residuals,
        separable,
        index,
    })
}

/// Monic lifts of the irreducible factors of `F mod p`, with multiplicities,
/// in canonical order.
pub fn mod_p_factors(f: &DensePolyZ, p: u64) -> Result<Vec<(DensePolyZ, u64)>> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let field = PrimeField::new(p)?;
    let reduced = field.reduce_poly(f);
    if reduced.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let fac = ffactor::factor(&field, &reduced, FACTOR_SEED)?;
    Ok(fac
        .factors
        .iter()
        .map(|(g, m)| {
            let mut lift = field.lift_poly(g);
            // x + u is lifted as x - (p - u)
            if g.degree() == Some(1) && g.coeffs()[0] != 0 {
                lift = &lift - &DensePolyZ::constant(BigInt::from(p));
            }
            (lift, *m)
        })
        .collect())
}

/// [`analyze_phi`], moving to the lift `phi + k p` when `phi` divides `F`.
pub fn analyze_lift(
    f: &DensePolyZ,
    phi: &DensePolyZ,
    multiplicity: u64,
    p: u64,
) -> Result<PhiAnalysis> {
    let n = f.degree().unwrap_or(0) as i64;
    let mut last = None;
    // F has at most n monic factors, so at most n of these lifts divide it
    for k in 0..=n {
        let shift = if k % 2 == 0 { -(k / 2) } else { k / 2 + 1 };
        let lift = phi + &DensePolyZ::constant(BigInt::from(shift) * p);
        match analyze_phi(f, &lift, multiplicity, p) {
            Err(e @ Error::DivisibleByPhi(_)) => last = Some(e),
            other => return other,
        }
    }
    Err(last.unwrap_or(Error::DivisibleByPhi(phi.to_string())))
}

/// Per-φ separability table backing [`is_p_regular`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityEvidence {
    pub phi: DensePolyZ,
    pub multiplicity: u64,
    pub sides: Vec<Side>,
    pub separable: Vec<bool>,
}

pub fn is_p_regular(f: &DensePolyZ, p: u64) -> Result<(bool, Vec<RegularityEvidence>)> {
    let mut evidence = Vec::new();
    for (phi, mult) in mod_p_factors(f, p)? {
        if mult == 1 {
            evidence.push(RegularityEvidence {
                phi,
                multiplicity: 1,
                sides: Vec::new(),
                separable: Vec::new(),
            });
            continue;
        }
        let an = analyze_lift(f, &phi, mult, p)?;
        evidence.push(RegularityEvidence {
            phi: an.phi.clone(),
            multiplicity: mult,
            sides: an.polygon.sides.clone(),
            separable: an.separable.clone(),
        });
    }
    let regular = evidence.iter().all(|e| e.separable.iter().all(|&s| s));
    Ok((regular, evidence))
}

/// Closed-form development of `x^(2^r) + a x + b` about `x - 1` at `p = 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedDevelopment {
    pub development: PhiDevelopment,
    /// `ν_2(2^r + a)`
    pub mu: Valuation,
    /// `ν_2(1 + a + b)`
    pub nu: Valuation,
}

pub fn shifted_dev_2r(r: u32, a: &BigInt, b: &BigInt) -> Result<ShiftedDevelopment> {
    if r == 0 || r > 20 {
        return Err(Error::OutOfRange(format!("r = {r}")));
    }
    let n = 1usize << r;
    let a0 = BigInt::one() + a + b;
    let a1 = (BigInt::one() << r) + a;
    let mut terms = Vec::with_capacity(n + 1);
    let mut vals = Vec::with_capacity(n + 1);
    vals.push(valp(2, &a0)?);
    terms.push(DensePolyZ::constant(a0));
    vals.push(valp(2, &a1)?);
    terms.push(DensePolyZ::constant(a1));
    let mut binom = BigInt::from(n);
    for j in 2..n {
        binom = binom * BigInt::from(n - j + 1) / BigInt::from(j);
        terms.push(DensePolyZ::constant(binom.clone()));
        vals.push(Valuation::Finite(binom_val2(r, j as u64)? as u64));
    }
    terms.push(DensePolyZ::one());
    vals.push(Valuation::Finite(0));
    let (mu, nu) = (vals[1], vals[0]);
    Ok(ShiftedDevelopment {
        development: PhiDevelopment {
            phi: DensePolyZ::from_i64s(&[-1, 1]),
            p: 2,
            terms,
            vals,
        },
        mu,
        nu,
    })
}
