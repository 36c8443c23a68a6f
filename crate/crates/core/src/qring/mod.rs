//! Exact coefficient arithmetic: Laurent polynomials in `q`, torus character
//! rings, their fractions, and truncated `q⁻¹`-series.

mod laurent;
mod rational;
mod tail;
mod torus;

use std::fmt::Debug;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

pub use laurent::Laurent;
pub use rational::RationalScalar;
pub use tail::{series_expand, Expansion, ExpansionDir, TailSeries, DEFAULT_TRUNCATION};
pub use torus::{Mono, TorusScalar};

pub(crate) use laurent::{q_mono, write_term};

/// Integral coefficient domain of the polynomial types.
pub trait Coeff:
    Clone
    + Eq
    + Hash
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// `self / d` if `d` divides `self`.
    fn div_exact(&self, d: &Self) -> Option<Self>;
    fn to_bigint(&self) -> BigInt;
}

impl Coeff for BigInt {
    fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

macro_rules! small_coeff {
    ($($t:ty),*) => {$(
        impl Coeff for $t {
            fn div_exact(&self, d: &Self) -> Option<Self> {
                if *d == 0 || self % d != 0 { None } else { Some(self / d) }
            }
            fn to_bigint(&self) -> BigInt {
                BigInt::from(*self)
            }
        }
    )*};
}
small_coeff!(i64, i128);

/// Laurent polynomials over arbitrary-precision integers: the ring `ℤ[q,q⁻¹]`.
pub type BarLaurent = Laurent<BigInt>;
/// Fixed-width variant, for hot loops whose coefficients stay small.
pub type SmallLaurent = Laurent<i64>;

/// Quantum integer `[n] = q^{1-n} + q^{3-n} + … + q^{n-1}`, odd in `n`.
pub fn qint(n: i64) -> BarLaurent {
    if n < 0 {
        return -qint(-n);
    }
    BarLaurent::from_terms((0..n).map(|k| (1 - n + 2 * k, BigInt::one())))
}

/// `[n]! = [n][n-1]⋯[1]`.
pub fn qfact(n: i64) -> BarLaurent {
    (1..=n).fold(BarLaurent::one(), |acc, k| &acc * &qint(k))
}

/// Gaussian binomial `[m]!/([p]![m-p]!)`, computed by exact division.
pub fn qbinom(m: i64, p: i64) -> BarLaurent {
    assert!(0 <= p && p <= m, "qbinom requires 0 <= p <= m, got ({m}, {p})");
    let den = &qfact(p) * &qfact(m - p);
    qfact(m)
        .div_exact(&den)
        .expect("q-factorial quotient must be exact")
}

/// `(-q)^n`.
pub fn neg_q_pow(n: i64) -> BarLaurent {
    let sign = if n.rem_euclid(2) == 0 { 1 } else { -1 };
    BarLaurent::monomial(BigInt::from(sign), n)
}

/// `(-1)^n` as an integer.
pub fn sign_pow(n: i64) -> i64 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}
