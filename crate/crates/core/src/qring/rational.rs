//! Fractions of torus characters with a factored denominator.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use super::{BarLaurent, Mono, TorusScalar};

/// `numerator / (den_int · Π den_factors)`.
///
/// Each stored factor is primitive, is not a unit, and has leading term
/// `c·1` with `c > 0` (lexicographic order on `(q, z)`). Factors dividing the
/// numerator are cancelled eagerly, so fractions arising from localization
/// sums collapse to polynomials whenever they are global.
#[derive(Clone)]
pub struct RationalScalar {
    num: TorusScalar,
    den_int: BigInt,
    den: Vec<TorusScalar>,
}

/// Split `f = unit · content · f'` with `f'` normalized as above.
fn normalize_factor(f: &TorusScalar) -> (TorusScalar, BigInt, TorusScalar) {
    let rank = f.rank();
    let (lm, lc) = f.leading().map(|(m, c)| (m.clone(), c.clone())).expect("zero factor");
    let sign = if lc.is_negative() { -BigInt::one() } else { BigInt::one() };
    let content = f.content();
    let unit = TorusScalar::from_mono(rank, sign.clone(), lm.clone());
    let g = f.mul_mono(&lm.inv()).scale_int(&sign).div_int_exact(&content).unwrap();
    (unit, content, g)
}

impl RationalScalar {
    pub fn zero(rank: usize) -> Self {
        Self::from_torus(TorusScalar::zero(rank))
    }

    pub fn one(rank: usize) -> Self {
        Self::from_torus(TorusScalar::one(rank))
    }

    pub fn from_torus(num: TorusScalar) -> Self {
        Self { num, den_int: BigInt::one(), den: Vec::new() }
    }

    pub fn from_laurent(rank: usize, p: &BarLaurent) -> Self {
        Self::from_torus(TorusScalar::from_laurent(rank, p))
    }

    /// `num / den`; panics on a zero denominator.
    pub fn new(num: TorusScalar, den: &TorusScalar) -> Self {
        Self::from_torus(num).div_torus(den)
    }

    pub fn rank(&self) -> usize {
        self.num.rank()
    }

    pub fn numerator(&self) -> &TorusScalar {
        &self.num
    }

    /// Product of the denominator factors.
    pub fn denominator(&self) -> TorusScalar {
        let mut d = TorusScalar::from_mono(self.rank(), self.den_int.clone(), Mono::one(self.rank()));
        for f in &self.den {
            d = &d * f;
        }
        d
    }

    pub fn den_factors(&self) -> &[TorusScalar] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The value as a polynomial, when the denominator has cleared.
    pub fn to_torus(&self) -> Option<TorusScalar> {
        (self.den.is_empty() && self.den_int.is_one()).then(|| self.num.clone())
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty() && self.den_int.is_one()
    }

    fn push_factor(&mut self, f: &TorusScalar) {
        assert!(!f.is_zero(), "division by zero");
        let (unit, content, g) = normalize_factor(f);
        self.num = self.num.div_exact(&unit).unwrap();
        self.den_int *= content;
        if !g.is_one() {
            self.den.push(g);
        }
    }

    fn reduce(mut self) -> Self {
        if self.num.is_zero() {
            self.den.clear();
            self.den_int = BigInt::one();
            return self;
        }
        let g = self.num.content().gcd(&self.den_int);
        if !g.is_one() {
            self.num = self.num.div_int_exact(&g).unwrap();
            self.den_int /= g;
        }
        let mut kept = Vec::with_capacity(self.den.len());
        for f in std::mem::take(&mut self.den) {
            match self.num.div_exact(&f) {
                Some(q) => self.num = q,
                None => kept.push(f),
            }
        }
        kept.sort_by(|a, b| a.terms().cmp(b.terms()));
        self.den = kept;
        self
    }

    pub fn div_torus(&self, d: &TorusScalar) -> Self {
        let mut out = self.clone();
        if let Some((pos, m)) = d.as_unit() {
            out.num = out.num.mul_mono(&m.inv());
            if !pos {
                out.num = -&out.num;
            }
            return out;
        }
        if let Some(q) = out.num.div_exact(d) {
            out.num = q;
            return out;
        }
        out.push_factor(d);
        out.reduce()
    }

    pub fn mul_torus(&self, t: &TorusScalar) -> Self {
        let mut out = self.clone();
        out.num = &out.num * t;
        out.reduce()
    }

    pub fn inverse(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        let mut out = Self::from_torus(self.denominator());
        out = out.div_torus(&self.num);
        out
    }

    pub fn div(&self, o: &Self) -> Self {
        self * &o.inverse()
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut acc = Self::one(self.rank());
        for _ in 0..n.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }

    fn map_parts(&self, f: impl Fn(&TorusScalar) -> TorusScalar) -> Self {
        let mut out = Self::from_torus(f(&self.num));
        out.den_int = self.den_int.clone();
        for d in &self.den {
            out.push_factor(&f(d));
        }
        out.reduce()
    }

    /// `q ↦ q⁻¹`.
    pub fn bar(&self) -> Self {
        self.map_parts(TorusScalar::bar)
    }

    /// `z ↦ z⁻¹`.
    pub fn dagger(&self) -> Self {
        self.map_parts(TorusScalar::dagger)
    }

    pub fn permute(&self, perm: &[usize]) -> Self {
        self.map_parts(|t| t.permute(perm))
    }

    pub fn extend_rank(&self, extra: usize) -> Self {
        self.map_parts(|t| t.extend_rank(extra))
    }

    /// Denominator factors of `self` and `o` merged as multisets (max multiplicity).
    fn lcm_factors(&self, o: &Self) -> (Vec<TorusScalar>, Vec<TorusScalar>, Vec<TorusScalar>) {
        let mut lcm = self.den.clone();
        let mut rest_a: Vec<TorusScalar> = Vec::new();
        let mut pool = self.den.clone();
        let mut rest_b = Vec::new();
        for f in &o.den {
            if let Some(i) = pool.iter().position(|g| g == f) {
                pool.swap_remove(i);
            } else {
                lcm.push(f.clone());
                rest_a.push(f.clone());
            }
        }
        // `pool` now holds the factors of `self` missing from `o`.
        rest_b.extend(pool);
        (lcm, rest_a, rest_b)
    }

    fn add_signed(&self, o: &Self, negate: bool) -> Self {
        assert_eq!(self.rank(), o.rank(), "rank mismatch");
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { -o } else { o.clone() };
        }
        let (lcm, missing_in_a, missing_in_b) = self.lcm_factors(o);
        let l = self.den_int.lcm(&o.den_int);
        let mut na = self.num.scale_int(&(&l / &self.den_int));
        for f in &missing_in_a {
            na = &na * f;
        }
        let mut nb = o.num.scale_int(&(&l / &o.den_int));
        for f in &missing_in_b {
            nb = &nb * f;
        }
        let num = if negate { &na - &nb } else { &na + &nb };
        Self { num, den_int: l, den: lcm }.reduce()
    }

    pub fn render(&self) -> String {
        format!("{self}")
    }
}

impl PartialEq for RationalScalar {
    fn eq(&self, o: &Self) -> bool {
        if self.den == o.den && self.den_int == o.den_int {
            return self.num == o.num;
        }
        self.add_signed(o, true).is_zero()
    }
}
impl Eq for RationalScalar {}

impl Add for &RationalScalar {
    type Output = RationalScalar;
    fn add(self, o: Self) -> RationalScalar {
        self.add_signed(o, false)
    }
}

impl Sub for &RationalScalar {
    type Output = RationalScalar;
    fn sub(self, o: Self) -> RationalScalar {
        self.add_signed(o, true)
    }
}

impl Mul for &RationalScalar {
    type Output = RationalScalar;
    fn mul(self, o: Self) -> RationalScalar {
        if self.is_zero() || o.is_zero() {
            return RationalScalar::zero(self.rank());
        }
        let mut out = RationalScalar {
            num: &self.num * &o.num,
            den_int: &self.den_int * &o.den_int,
            den: self.den.clone(),
        };
        out.den.extend(o.den.iter().cloned());
        out.reduce()
    }
}

impl Neg for &RationalScalar {
    type Output = RationalScalar;
    fn neg(self) -> RationalScalar {
        RationalScalar { num: -&self.num, den_int: self.den_int.clone(), den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalScalar {
            type Output = RationalScalar;
            fn $m(self, rhs: Self) -> RationalScalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RationalScalar {
    type Output = RationalScalar;
    fn neg(self) -> RationalScalar {
        -&self
    }
}

impl From<TorusScalar> for RationalScalar {
    fn from(t: TorusScalar) -> Self {
        Self::from_torus(t)
    }
}

impl fmt::Display for RationalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({})/(", self.num)?;
        let mut parts: Vec<String> = Vec::new();
        if !self.den_int.is_one() {
            parts.push(self.den_int.to_string());
        }
        parts.extend(self.den.iter().map(|d| format!("({d})")));
        write!(f, "{})", parts.join("*"))
    }
}

impl fmt::Debug for RationalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
