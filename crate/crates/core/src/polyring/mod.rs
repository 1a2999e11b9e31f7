//! Exact polynomial arithmetic over Z and over finite fields.

mod fq;
mod zpoly;

pub use fq::{reduce_mod, FiniteField, FqField, FqPoly, PolyArith, PrimeField};
pub use zpoly::{discriminant, phi_expand, resultant, DensePolyZ, PhiDevelopment};

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;

    use super::*;
    use crate::error::Error;
    use crate::exactnum::Valuation;

    fn z(c: &[i64]) -> DensePolyZ {
        DensePolyZ::from_i64s(c)
    }

    fn tri(n: usize, m: usize, a: i64, b: i64) -> DensePolyZ {
        DensePolyZ::trinomial(n, m, &BigInt::from(a), &BigInt::from(b))
    }

    #[test]
    fn divrem_examples() {
        let (q, r) = z(&[5, 3, 1]).divrem(&z(&[1, 1])).unwrap();
        assert_eq!((q, r), (z(&[2, 1]), z(&[3])));
        let (_, r) = tri(8, 1, 12, 3).divrem(&z(&[-1, 1])).unwrap();
        assert_eq!(r, z(&[16]));
        let f = tri(8, 1, 12, 3);
        assert_eq!(f.divrem(&f).unwrap(), (z(&[1]), DensePolyZ::zero()));
        assert_eq!(f.divrem(&z(&[1, 2])), Err(Error::NotMonic));
    }

    #[test]
    fn development_about_x_minus_one() {
        let dev = phi_expand(&tri(8, 1, 12, 3), &z(&[-1, 1]), 2).unwrap();
        let binom = [1i64, 8, 28, 56, 70, 56, 28, 8, 1];
        let mut expect: Vec<DensePolyZ> = binom.iter().map(|&c| z(&[c])).collect();
        expect[0] = z(&[16]);
        expect[1] = z(&[20]);
        assert_eq!(dev.terms, expect);
        let vals: Vec<Valuation> = [4, 2, 2, 3, 1, 3, 2, 3, 0]
            .iter()
            .map(|&v| Valuation::Finite(v))
            .collect();
        assert_eq!(dev.vals, vals);
        assert_eq!(dev.reconstruct(), tri(8, 1, 12, 3));
    }

    #[test]
    fn development_about_x() {
        let dev = phi_expand(&tri(8, 1, 8, 8), &DensePolyZ::x(), 2).unwrap();
        assert_eq!(dev.terms.len(), 9);
        assert_eq!(dev.vals[0], Valuation::Finite(3));
        assert_eq!(dev.vals[1], Valuation::Finite(3));
        assert_eq!(dev.vals[8], Valuation::Finite(0));
        assert!(dev.vals[2..8].iter().all(|v| *v == Valuation::Infinity));
        assert!(phi_expand(&tri(8, 1, 8, 8), &z(&[3]), 2).is_err());
    }

    #[test]
    fn development_about_quadratic() {
        let f = z(&[3, 1, 4, 1, 5, 9, 2, 6, 1]);
        let phi = z(&[1, 1, 1]);
        let dev = phi_expand(&f, &phi, 2).unwrap();
        assert_eq!(dev.terms.len(), 5);
        assert!(dev.terms.iter().all(|t| t.degree().unwrap_or(0) < 2));
        assert_eq!(dev.reconstruct(), f);
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(
            resultant(&z(&[-1, 0, 1]), &z(&[-2, 1])).unwrap(),
            BigInt::from(3)
        );
        assert_eq!(
            resultant(&z(&[5, 1]), &z(&[-7, 1])).unwrap(),
            BigInt::from(-12)
        );
        assert!(resultant(&DensePolyZ::zero(), &z(&[1, 1])).is_err());
        // common root
        assert_eq!(
            resultant(&z(&[-1, 0, 1]), &z(&[1, 1])).unwrap(),
            BigInt::from(0)
        );
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(&z(&[7, 5, 1])).unwrap(), BigInt::from(25 - 28));
        let d = discriminant(&tri(8, 1, 8, 8)).unwrap();
        assert_eq!(d, BigInt::from(1273609) << 24);
        assert_eq!(
            discriminant(&z(&[8, -2, 1, 1])).unwrap(),
            BigInt::from(-4 * 503)
        );
        assert!(discriminant(&z(&[1, 1])).is_err());
        assert_eq!(discriminant(&z(&[1, 2, 2])), Err(Error::NotMonic));
    }
}
