//! Laurent polynomials in `q, z₁, …, z_ℓ`: torus characters.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{q_mono, write_term, BarLaurent};

/// Monomial `q^q · Π z_i^{z_i}`, ordered lexicographically on `(q, z)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Mono {
    pub q: i64,
    pub z: Vec<i64>,
}

impl Mono {
    pub fn one(rank: usize) -> Self {
        Self { q: 0, z: vec![0; rank] }
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        Mono { q: self.q + o.q, z: self.z.iter().zip(&o.z).map(|(a, b)| a + b).collect() }
    }

    pub fn div(&self, o: &Mono) -> Mono {
        Mono { q: self.q - o.q, z: self.z.iter().zip(&o.z).map(|(a, b)| a - b).collect() }
    }

    pub fn inv(&self) -> Mono {
        Mono { q: -self.q, z: self.z.iter().map(|a| -a).collect() }
    }

    pub fn pow(&self, n: i64) -> Mono {
        Mono { q: self.q * n, z: self.z.iter().map(|a| a * n).collect() }
    }

    pub fn z_trivial(&self) -> bool {
        self.z.iter().all(|&a| a == 0)
    }

    pub fn is_one(&self) -> bool {
        self.q == 0 && self.z_trivial()
    }

    fn render(&self) -> String {
        let mut parts = Vec::new();
        let qm = q_mono(self.q);
        if !qm.is_empty() {
            parts.push(qm);
        }
        for (i, &a) in self.z.iter().enumerate() {
            match a {
                0 => {}
                1 => parts.push(format!("z{}", i + 1)),
                _ => parts.push(format!("z{}^{}", i + 1, a)),
            }
        }
        parts.join("*")
    }
}

/// Element of `ℤ[q^{±1}, z₁^{±1}, …, z_ℓ^{±1}]` in canonical sparse form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TorusScalar {
    rank: usize,
    terms: BTreeMap<Mono, BigInt>,
}

impl TorusScalar {
    pub fn zero(rank: usize) -> Self {
        Self { rank, terms: BTreeMap::new() }
    }

    pub fn one(rank: usize) -> Self {
        Self::from_mono(rank, BigInt::one(), Mono::one(rank))
    }

    pub fn from_int(rank: usize, c: i64) -> Self {
        Self::from_mono(rank, BigInt::from(c), Mono::one(rank))
    }

    pub fn from_mono(rank: usize, c: BigInt, m: Mono) -> Self {
        debug_assert_eq!(m.z.len(), rank);
        let mut s = Self::zero(rank);
        s.add_term(m, c);
        s
    }

    /// `q^n`.
    pub fn q_pow(rank: usize, n: i64) -> Self {
        Self::from_mono(rank, BigInt::one(), Mono { q: n, z: vec![0; rank] })
    }

    /// `q^qe · Π z^ze` with coefficient `c`.
    pub fn term(c: i64, qe: i64, ze: &[i64]) -> Self {
        Self::from_mono(ze.len(), BigInt::from(c), Mono { q: qe, z: ze.to_vec() })
    }

    /// `z_i^n` (0-based `i`).
    pub fn z_pow(rank: usize, i: usize, n: i64) -> Self {
        let mut z = vec![0; rank];
        z[i] = n;
        Self::from_mono(rank, BigInt::one(), Mono { q: 0, z })
    }

    pub fn from_laurent(rank: usize, p: &BarLaurent) -> Self {
        let mut s = Self::zero(rank);
        for (e, c) in p.terms() {
            s.add_term(Mono { q: e, z: vec![0; rank] }, c.clone());
        }
        s
    }

    pub fn from_terms<I: IntoIterator<Item = (Mono, BigInt)>>(rank: usize, it: I) -> Self {
        let mut s = Self::zero(rank);
        for (m, c) in it {
            s.add_term(m, c);
        }
        s
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn add_term(&mut self, m: Mono, c: BigInt) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.z.len(), self.rank);
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn coeff(&self, m: &Mono) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Lexicographically largest term.
    pub fn leading(&self) -> Option<(&Mono, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Lexicographically smallest term.
    pub fn trailing(&self) -> Option<(&Mono, &BigInt)> {
        self.terms.iter().next()
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        Self::from_terms(self.rank, self.terms.iter().map(|(m, x)| (m.clone(), x * c)))
    }

    pub fn mul_mono(&self, m: &Mono) -> Self {
        Self { rank: self.rank, terms: self.terms.iter().map(|(a, c)| (a.mul(m), c.clone())).collect() }
    }

    pub fn mul_laurent(&self, p: &BarLaurent) -> Self {
        self * &Self::from_laurent(self.rank, p)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.rank);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Integer power; negative exponents need a unit.
    pub fn powi(&self, n: i64) -> Self {
        if n >= 0 {
            self.pow(n as u32)
        } else {
            self.unit_inverse()
                .expect("negative power of a non-unit")
                .pow((-n) as u32)
        }
    }

    /// `±monomial` decomposition of a unit.
    pub fn as_unit(&self) -> Option<(bool, &Mono)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next().unwrap();
        if c.is_one() {
            Some((true, m))
        } else if (-c).is_one() {
            Some((false, m))
        } else {
            None
        }
    }

    pub fn is_unit(&self) -> bool {
        self.as_unit().is_some()
    }

    pub fn unit_inverse(&self) -> Option<Self> {
        let (pos, m) = self.as_unit()?;
        let c = if pos { BigInt::one() } else { -BigInt::one() };
        Some(Self::from_mono(self.rank, c, m.inv()))
    }

    /// `q ↦ q⁻¹`, `z` fixed.
    pub fn bar(&self) -> Self {
        self.map_monos(|m| Mono { q: -m.q, z: m.z.clone() })
    }

    /// `z_i ↦ z_i⁻¹`, `q` fixed.
    pub fn dagger(&self) -> Self {
        self.map_monos(|m| Mono { q: m.q, z: m.z.iter().map(|a| -a).collect() })
    }

    /// Dual character: `q ↦ q⁻¹` and `z ↦ z⁻¹`.
    pub fn dual(&self) -> Self {
        self.map_monos(Mono::inv)
    }

    /// Relabel variables: new `z_{perm[i]}` receives old `z_i`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        self.map_monos(|m| {
            let mut z = vec![0; m.z.len()];
            for (i, &a) in m.z.iter().enumerate() {
                z[perm[i]] = a;
            }
            Mono { q: m.q, z }
        })
    }

    /// Embed into a ring with `extra` more trailing variables.
    pub fn extend_rank(&self, extra: usize) -> Self {
        let r = self.rank + extra;
        let mut out = Self::zero(r);
        for (m, c) in &self.terms {
            let mut z = m.z.clone();
            z.resize(r, 0);
            out.add_term(Mono { q: m.q, z }, c.clone());
        }
        out
    }

    pub fn map_monos(&self, f: impl Fn(&Mono) -> Mono) -> Self {
        Self::from_terms(self.rank, self.terms.iter().map(|(m, c)| (f(m), c.clone())))
    }

    /// Projection onto trivial torus characters: keeps `z`-degree-zero terms.
    pub fn partial(&self) -> BarLaurent {
        BarLaurent::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.z_trivial())
                .map(|(m, c)| (m.q, c.clone())),
        )
    }

    /// The polynomial as an element of `ℤ[q,q⁻¹]` when no `z` occurs.
    pub fn as_laurent(&self) -> Option<BarLaurent> {
        if self.terms.keys().all(Mono::z_trivial) {
            Some(self.partial())
        } else {
            None
        }
    }

    /// gcd of the integer coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Componentwise minimum exponent monomial.
    pub fn min_mono(&self) -> Option<Mono> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, m| Mono {
            q: acc.q.min(m.q),
            z: acc.z.iter().zip(&m.z).map(|(a, b)| *a.min(b)).collect(),
        }))
    }

    pub fn div_int_exact(&self, c: &BigInt) -> Option<Self> {
        let mut out = Self::zero(self.rank);
        for (m, x) in &self.terms {
            let (q, r) = x.div_rem(c);
            if !r.is_zero() {
                return None;
            }
            out.add_term(m.clone(), q);
        }
        Some(out)
    }

    /// Exact division by leading terms in lexicographic order; `None` on remainder.
    pub fn div_exact(&self, den: &Self) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(self.rank));
        }
        if let Some((pos, m)) = den.as_unit() {
            let mut r = self.mul_mono(&m.inv());
            if !pos {
                r = -&r;
            }
            return Some(r);
        }
        let (dm, dc) = den.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        // Newton polytopes add under multiplication, so every quotient exponent
        // lies in this box; leaving it proves a remainder.
        let (nlo, nhi) = self.exponent_box();
        let (dlo, dhi) = den.exponent_box();
        let lo: Vec<i64> = nlo.iter().zip(&dlo).map(|(a, b)| a - b).collect();
        let hi: Vec<i64> = nhi.iter().zip(&dhi).map(|(a, b)| a - b).collect();
        let mut rem = self.clone();
        let mut quo = Self::zero(self.rank);
        while let Some((rm, rc)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let m = rm.div(&dm);
            let inside = std::iter::once(m.q)
                .chain(m.z.iter().copied())
                .zip(lo.iter().zip(&hi))
                .all(|(e, (l, h))| *l <= e && e <= *h);
            if !inside {
                return None;
            }
            let (c, r) = rc.div_rem(&dc);
            if !r.is_zero() {
                return None;
            }
            let t = Self::from_mono(self.rank, c, m);
            rem -= &(&t * den);
            quo += &t;
        }
        Some(quo)
    }

    /// Per-coordinate exponent bounds over `(q, z₁, …)`.
    fn exponent_box(&self) -> (Vec<i64>, Vec<i64>) {
        let n = self.rank + 1;
        let mut lo = vec![i64::MAX; n];
        let mut hi = vec![i64::MIN; n];
        for m in self.terms.keys() {
            for (k, e) in std::iter::once(m.q).chain(m.z.iter().copied()).enumerate() {
                lo[k] = lo[k].min(e);
                hi[k] = hi[k].max(e);
            }
        }
        (lo, hi)
    }

    /// Substitute `z_k ↦ 1` for variables listed in `vars`.
    pub fn specialize_z(&self, vars: &[usize]) -> Self {
        self.map_monos(|m| {
            let mut z = m.z.clone();
            for &k in vars {
                z[k] = 0;
            }
            Mono { q: m.q, z }
        })
    }

    /// Degree range in `q`.
    pub fn q_range(&self) -> Option<(i64, i64)> {
        let lo = self.terms.keys().map(|m| m.q).min()?;
        let hi = self.terms.keys().map(|m| m.q).max()?;
        Some((lo, hi))
    }

    /// Coefficient of `q^e` as a polynomial in the `z` only.
    pub fn q_coeff(&self, e: i64) -> Self {
        Self::from_terms(
            self.rank,
            self.terms
                .iter()
                .filter(|(m, _)| m.q == e)
                .map(|(m, c)| (Mono { q: 0, z: m.z.clone() }, c.clone())),
        )
    }

    /// All terms have `q`-exponent `< 0`.
    pub fn in_negative_q_part(&self) -> bool {
        self.terms.keys().all(|m| m.q < 0)
    }

    pub fn sign_normalized(&self) -> Self {
        match self.leading() {
            Some((_, c)) if c.is_negative() => -self,
            _ => self.clone(),
        }
    }
}

impl Add for &TorusScalar {
    type Output = TorusScalar;
    fn add(self, rhs: Self) -> TorusScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &TorusScalar {
    type Output = TorusScalar;
    fn sub(self, rhs: Self) -> TorusScalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &TorusScalar {
    type Output = TorusScalar;
    fn mul(self, rhs: Self) -> TorusScalar {
        assert_eq!(self.rank, rhs.rank, "torus rank mismatch");
        let mut out = TorusScalar::zero(self.rank);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }
}

impl Neg for &TorusScalar {
    type Output = TorusScalar;
    fn neg(self) -> TorusScalar {
        TorusScalar {
            rank: self.rank,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl AddAssign<&TorusScalar> for TorusScalar {
    fn add_assign(&mut self, rhs: &TorusScalar) {
        assert_eq!(self.rank, rhs.rank, "torus rank mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&TorusScalar> for TorusScalar {
    fn sub_assign(&mut self, rhs: &TorusScalar) {
        assert_eq!(self.rank, rhs.rank, "torus rank mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for TorusScalar {
            type Output = TorusScalar;
            fn $m(self, rhs: Self) -> TorusScalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for TorusScalar {
    type Output = TorusScalar;
    fn neg(self) -> TorusScalar {
        -&self
    }
}

impl fmt::Display for TorusScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            write_term(f, i == 0, c, &m.render())?;
        }
        Ok(())
    }
}

impl fmt::Debug for TorusScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
