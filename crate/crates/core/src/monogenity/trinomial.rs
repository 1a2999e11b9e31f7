use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::polyring::DensePolyZ;

/// `x^n + a x^m + b` with `n > m >= 1` and `b != 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Trinomial {
    n: usize,
    m: usize,
    a: BigInt,
    b: BigInt,
}

impl Trinomial {
    pub fn new(n: usize, m: usize, a: BigInt, b: BigInt) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidTrinomial(format!("degree {n} is below 2")));
        }
        if m == 0 || m >= n {
            return Err(Error::InvalidTrinomial(format!(
                "need 1 <= m < n, got n={n}, m={m}"
            )));
        }
        if b.is_zero() {
            return Err(Error::InvalidTrinomial("b must be nonzero".into()));
        }
        Ok(Trinomial { n, m, a, b })
    }

    /// `x^(2^r) + a x^m + b`.
    pub fn two_power(r: u32, m: usize, a: BigInt, b: BigInt) -> Result<Self> {
        if r == 0 || r > 20 {
            return Err(Error::InvalidTrinomial(format!("r = {r} outside 1..=20")));
        }
        Self::new(1 << r, m, a, b)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn d0(&self) -> usize {
        self.n.gcd(&self.m)
    }

    pub fn n1(&self) -> usize {
        self.n / self.d0()
    }

    pub fn m1(&self) -> usize {
        self.m / self.d0()
    }

    /// `r` when `n = 2^r`.
    pub fn log2_degree(&self) -> Option<u32> {
        self.n.is_power_of_two().then(|| self.n.trailing_zeros())
    }

    pub fn to_poly(&self) -> DensePolyZ {
        DensePolyZ::trinomial(self.n, self.m, &self.a, &self.b)
    }
}

impl fmt::Display for Trinomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_poly().fmt(f)
    }
}

/// The closed form evaluated by [`disc_trinomial`].
pub const DISC_FORMULA_READING: &str =
    "(-1)^(n(n-1)/2) b^(m-1) (n^n1 b^(n1-m1) - (-1)^m1 m^m1 (m-n)^(n1-m1) a^n1)^d0";

fn pow_u(base: i64, e: usize) -> BigInt {
    num_traits::pow(BigInt::from(base), e)
}

/// Closed-form discriminant of a trinomial.
pub fn disc_trinomial(t: &Trinomial) -> BigInt {
    let (n, m) = (t.n, t.m);
    let (n1, m1, d0) = (t.n1(), t.m1(), t.d0());
    let first = pow_u(n as i64, n1) * num_traits::pow(t.b.clone(), n1 - m1);
    let mut second = pow_u(m as i64, m1)
        * pow_u(m as i64 - n as i64, n1 - m1)
        * num_traits::pow(t.a.clone(), n1);
    if m1 % 2 == 1 {
        second = -second;
    }
    let inner = num_traits::pow(first - second, d0);
    let mut out = num_traits::pow(t.b.clone(), m - 1) * inner;
    if (n * (n - 1) / 2) % 2 == 1 {
        out = -out;
    }
    out
}
