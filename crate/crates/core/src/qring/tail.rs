//! Truncated expansions: `q⁻¹`-adic tails and spectral-variable series.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Mono, RationalScalar, TorusScalar};
use crate::error::{QloopError, Result};

/// Default truncation order of `q⁻¹`-tails.
pub const DEFAULT_TRUNCATION: i64 = -32;

/// Series `Σ c_m m` with `q`-exponents bounded above; every monomial whose
/// `q`-exponent lies below `trunc` is unknown and never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct TailSeries {
    poly: TorusScalar,
    trunc: i64,
}

impl TailSeries {
    pub fn new(poly: &TorusScalar, trunc: i64) -> Self {
        let kept = TorusScalar::from_terms(
            poly.rank(),
            poly.terms().filter(|(m, _)| m.q >= trunc).map(|(m, c)| (m.clone(), c.clone())),
        );
        Self { poly: kept, trunc }
    }

    pub fn zero(rank: usize, trunc: i64) -> Self {
        Self { poly: TorusScalar::zero(rank), trunc }
    }

    pub fn truncation_order(&self) -> i64 {
        self.trunc
    }

    pub fn known_part(&self) -> &TorusScalar {
        &self.poly
    }

    pub fn rank(&self) -> usize {
        self.poly.rank()
    }

    /// Zero at every known order.
    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&(&self.poly + &o.poly), self.trunc.max(o.trunc))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(&(&self.poly - &o.poly), self.trunc.max(o.trunc))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let top = |p: &TorusScalar| p.q_range().map_or(i64::MIN / 4, |r| r.1);
        let t = (self.trunc + top(&o.poly))
            .max(o.trunc + top(&self.poly))
            .max(self.trunc.max(o.trunc));
        Self::new(&(&self.poly * &o.poly), t)
    }

    pub fn mul_torus(&self, t: &TorusScalar) -> Self {
        self.mul(&Self::new(t, i64::MIN / 4))
    }

    pub fn dagger(&self) -> Self {
        Self { poly: self.poly.dagger(), trunc: self.trunc }
    }

    /// Inverse of a polynomial whose top `q`-degree part is `±monomial`.
    pub fn inverse_of(p: &TorusScalar, trunc: i64) -> Result<Self> {
        let rank = p.rank();
        let (_, hi) = p.q_range().ok_or(QloopError::Completion("inverse of zero".into()))?;
        let lead = p.q_coeff(hi).mul_mono(&Mono { q: hi, z: vec![0; rank] });
        let lead_inv = lead.unit_inverse().ok_or_else(|| {
            QloopError::Completion(format!("leading q-part of {p} is not a unit"))
        })?;
        // p = lead·(1 - r) with r ∈ q⁻¹ℤ[z^±][q⁻¹]
        let r = &TorusScalar::one(rank) - &(&lead_inv * p);
        debug_assert!(r.in_negative_q_part());
        let inner = trunc + hi;
        let mut acc = TorusScalar::one(rank);
        let mut power = TorusScalar::one(rank);
        loop {
            power = TailSeries::new(&(&power * &r), inner).poly;
            if power.is_zero() {
                break;
            }
            acc += &power;
        }
        Ok(Self::new(&(&acc * &lead_inv), trunc))
    }

    /// Expand a fraction in the `q⁻¹`-adic completion.
    pub fn from_rational(r: &RationalScalar, trunc: i64) -> Result<Self> {
        let num = r.numerator();
        if num.is_zero() {
            return Ok(Self::zero(r.rank(), trunc));
        }
        let ntop = num.q_range().map_or(0, |x| x.1);
        let inv = Self::inverse_of(&r.denominator(), trunc - ntop)?;
        Ok(Self::new(&(num * &inv.poly), trunc))
    }

    /// `∂`: trivial-character part, as integer series.
    pub fn partial(&self) -> Self {
        Self::new(&TorusScalar::from_laurent(0, &self.poly.partial()), self.trunc)
    }

    /// Membership in `δ + q⁻¹ℤ[[q⁻¹]]` (for a rank-0 or `∂`-projected tail).
    pub fn in_delta_plus_tail(&self, delta: bool) -> bool {
        let p = self.poly.partial();
        let expect = if delta { BigInt::one() } else { BigInt::zero() };
        p.terms().all(|(e, c)| e < 0 || (e == 0 && *c == expect))
            && (p.coeff(0) == expect)
    }
}

impl fmt::Display for TailSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(q^{})", self.poly, self.trunc)
    }
}

impl fmt::Debug for TailSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Direction of a spectral expansion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpansionDir {
    /// Series in `z⁻¹`.
    AtInfinity,
    /// Series in `z`.
    AtZero,
}

/// Coefficients `c_r` of `Σ_{r=0}^{order} c_r z^{∓r}` after a spectral expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    pub dir: ExpansionDir,
    /// Coefficient of `z^{∓r}` is `coeffs[r]`, in the remaining variables.
    pub coeffs: Vec<TorusScalar>,
}

/// Split a polynomial by powers of the variable `z_var`.
fn by_power(p: &TorusScalar, var: usize) -> BTreeMap<i64, TorusScalar> {
    let rank = p.rank();
    let mut out: BTreeMap<i64, TorusScalar> = BTreeMap::new();
    for (m, c) in p.terms() {
        let mut z = m.z.clone();
        let e = z[var];
        z[var] = 0;
        out.entry(e)
            .or_insert_with(|| TorusScalar::zero(rank))
            .add_term(Mono { q: m.q, z }, c.clone());
    }
    out
}

/// Expand `r` in `z_var^{-1}` (at infinity) or `z_var` (at zero) up to `order`.
///
/// The extreme coefficient of the denominator in the chosen direction must be
/// a unit of the remaining variables.
pub fn series_expand(
    r: &RationalScalar,
    var: usize,
    dir: ExpansionDir,
    order: usize,
) -> Result<Expansion> {
    let rank = r.rank();
    let sgn = match dir {
        ExpansionDir::AtInfinity => -1,
        ExpansionDir::AtZero => 1,
    };
    // Writing f = Σ_e f_e z^e, the series variable is u = z^{sgn}.
    let to_u = |p: &TorusScalar| -> (i64, Vec<TorusScalar>) {
        let parts = by_power(p, var);
        let lo = parts.keys().map(|e| e * sgn).min().unwrap_or(0);
        let hi = parts.keys().map(|e| e * sgn).max().unwrap_or(0);
        let mut v = vec![TorusScalar::zero(rank); (hi - lo + 1) as usize];
        for (e, c) in parts {
            v[(e * sgn - lo) as usize] = c;
        }
        (lo, v)
    };
    let (nlo, nv) = to_u(r.numerator());
    let den = r.denominator();
    let (dlo, dv) = to_u(&den);
    let d0inv = dv[0].unit_inverse().ok_or_else(|| {
        QloopError::Expansion(format!("leading coefficient {} is not invertible", dv[0]))
    })?;
    // The result is u^{nlo-dlo} · N(u)/D(u) with D(0) a unit.
    let shift = nlo - dlo;
    let need = order as i64 - shift;
    let mut out = vec![TorusScalar::zero(rank); order + 1];
    if need >= 0 {
        let n = need as usize;
        // Power series division N/D up to u^n.
        let mut inv = vec![TorusScalar::zero(rank); n + 1];
        inv[0] = d0inv.clone();
        for k in 1..=n {
            let mut s = TorusScalar::zero(rank);
            for j in 1..=k.min(dv.len() - 1) {
                s += &(&dv[j] * &inv[k - j]);
            }
            inv[k] = -&(&s * &d0inv);
        }
        for k in 0..=n {
            let mut s = TorusScalar::zero(rank);
            for j in 0..=k.min(nv.len() - 1) {
                s += &(&nv[j] * &inv[k - j]);
            }
            let idx = k as i64 + shift;
            if idx >= 0 {
                out[idx as usize] = s;
            }
        }
    }
    if shift < 0 {
        // Negative powers of u cannot be represented in the requested window.
        return Err(QloopError::Expansion(format!(
            "expansion starts at u^{shift}, below the series origin"
        )));
    }
    Ok(Expansion { dir, coeffs: out })
}
