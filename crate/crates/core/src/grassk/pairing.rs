//! The pairings `( : )`, `( ‖ )`, `( | )` and `( | )′`.

use std::fmt;
use std::str::FromStr;

use super::class::{FixedClass, Space};
use super::model::A1Model;
use super::scalars::ScalarBook;
use crate::error::{QloopError, Result};
use crate::qring::{RationalScalar, TailSeries, TorusScalar};
use crate::uqalg::braid_t;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairingKind {
    /// `(x:y)`, **W** × **W**′.
    Colon,
    /// `(x‖y)`, **W** × **W**′.
    DoubleBar,
    /// `(x|y) = (x‖κ★y)`, **W** × **W**.
    SingleBar,
    /// `(x|y)′ = (κ★⁻¹x‖y)`, **W**′ × **W**′, valued in `q⁻¹`-series.
    SingleBarPrime,
}

impl PairingKind {
    /// Spaces of the two arguments.
    pub fn spaces(self) -> (Space, Space) {
        match self {
            PairingKind::Colon | PairingKind::DoubleBar => (Space::F, Space::Q),
            PairingKind::SingleBar => (Space::F, Space::F),
            PairingKind::SingleBarPrime => (Space::Q, Space::Q),
        }
    }
}

impl FromStr for PairingKind {
    type Err = QloopError;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "colon" => PairingKind::Colon,
            "double_bar" => PairingKind::DoubleBar,
            "single_bar" => PairingKind::SingleBar,
            "single_bar_prime" => PairingKind::SingleBarPrime,
            _ => return Err(QloopError::Invalid(format!("unknown pairing {s}"))),
        })
    }
}

impl fmt::Display for PairingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairingKind::Colon => "colon",
            PairingKind::DoubleBar => "double_bar",
            PairingKind::SingleBar => "single_bar",
            PairingKind::SingleBarPrime => "single_bar_prime",
        })
    }
}

/// A pairing value: exact, or a `q⁻¹`-series for the primed pairing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairValue {
    Exact(TorusScalar),
    Tail(TailSeries),
}

impl PairValue {
    pub fn as_tail(&self, trunc: i64) -> TailSeries {
        match self {
            PairValue::Exact(t) => TailSeries::new(t, trunc),
            PairValue::Tail(t) => t.clone(),
        }
    }
}

impl fmt::Display for PairValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairValue::Exact(t) => write!(f, "{t}"),
            PairValue::Tail(t) => write!(f, "{t}"),
        }
    }
}

fn global(r: RationalScalar, what: &str) -> Result<TorusScalar> {
    r.to_torus()
        .ok_or_else(|| QloopError::Integrality(format!("{what} = {r} does not clear its denominators")))
}

impl A1Model {
    fn expect_space(&self, x: &FixedClass, s: Space) -> Result<()> {
        if x.space() != s || x.ell() != self.ell() {
            return Err(QloopError::Dimension(format!(
                "pairing argument on {} for ℓ = {}, expected {s} for ℓ = {}",
                x.space(),
                x.ell(),
                self.ell()
            )));
        }
        Ok(())
    }

    /// `(x:y) = Σ_S x|_S y|_S / e_F(S)`, exact before globality is asserted.
    pub fn colon_exact(&self, x: &FixedClass, y: &FixedClass) -> Result<RationalScalar> {
        self.expect_space(x, Space::F)?;
        self.expect_space(y, Space::Q)?;
        let mut acc = RationalScalar::zero(self.ell());
        for ((_, s, u), (_, _, v)) in x.restrictions().zip(y.restrictions()) {
            if u.is_zero() || v.is_zero() {
                continue;
            }
            acc = &acc + &(u * v).div_torus(&self.e_f(s));
        }
        Ok(acc)
    }

    /// Left argument of `( ‖ )` after the twist `(−q)^a c⁻¹`.
    fn double_bar_left(&self, book: &ScalarBook, x: &FixedClass) -> FixedClass {
        x.map(|a, s, v| {
            if v.is_zero() {
                return v.clone();
            }
            let c = book.c_at(a, s).unit_inverse().expect("c is a unit");
            v.mul_torus(&c.mul_laurent(&book.a[a]))
        })
    }

    /// Right argument of `( ‖ )`: `ω*(T⁻¹y)`.
    fn double_bar_right(&self, y: &FixedClass) -> Result<FixedClass> {
        Ok(self.omega_pullback(&braid_t(self, 0, y, -1)?))
    }

    /// `(x‖y) = ((−q)^a c⁻¹ x : ω*(T⁻¹y))` as an exact fraction.
    pub fn double_bar_exact(&self, book: &ScalarBook, x: &FixedClass, y: &FixedClass) -> Result<RationalScalar> {
        self.expect_space(x, Space::F)?;
        self.expect_space(y, Space::Q)?;
        self.colon_exact(&self.double_bar_left(book, x), &self.double_bar_right(y)?)
    }

    /// Evaluate a pairing. Exact kinds must produce a Laurent polynomial.
    pub fn pair(
        &self,
        book: &ScalarBook,
        x: &FixedClass,
        y: &FixedClass,
        kind: PairingKind,
        trunc: i64,
    ) -> Result<PairValue> {
        match kind {
            PairingKind::Colon => Ok(PairValue::Exact(global(self.colon_exact(x, y)?, "(x:y)")?)),
            PairingKind::DoubleBar => {
                Ok(PairValue::Exact(global(self.double_bar_exact(book, x, y)?, "(x‖y)")?))
            }
            PairingKind::SingleBar => {
                let ky = self.kappa_star(y)?;
                Ok(PairValue::Exact(global(self.double_bar_exact(book, x, &ky)?, "(x|y)")?))
            }
            PairingKind::SingleBarPrime => Ok(PairValue::Tail(self.single_bar_prime(book, x, y, trunc)?)),
        }
    }

    /// `(x|y)′` through the completion: `κ★⁻¹x` is expanded as a
    /// `q⁻¹`-series and every `q`-degree is localized separately; each
    /// degree must give a Laurent polynomial in `z`.
    pub fn single_bar_prime(&self, book: &ScalarBook, x: &FixedClass, y: &FixedClass, trunc: i64) -> Result<TailSeries> {
        self.expect_space(x, Space::Q)?;
        self.expect_space(y, Space::Q)?;
        let ell = self.ell();
        let right = self.double_bar_right(y)?;
        // (−q)^a c⁻¹·y′ is an exact Laurent polynomial at each fixed point;
        // its top q-degree bounds the precision lost in the product.
        let mut twisted = Vec::new();
        let mut top = 0i64;
        for ((a, s, u), (_, _, v)) in x.restrictions().zip(right.restrictions()) {
            if u.is_zero() || v.is_zero() {
                continue;
            }
            let c = book.c_at(a, s).unit_inverse().expect("c is a unit");
            let w = global(v.mul_torus(&c.mul_laurent(&book.a[a])), "ω*T⁻¹y")?;
            top = top.max(w.q_range().map_or(0, |r| r.1));
            twisted.push((s, u.clone(), w));
        }
        let inner = trunc - top;
        let mut acc = TorusScalar::zero(ell);
        let mut per_degree: std::collections::BTreeMap<i64, RationalScalar> = Default::default();
        for (s, u, w) in twisted {
            let k = TailSeries::from_rational(&u.div_torus(&self.e_n(s)), inner)?;
            let prod = &k.known_part().clone() * &w;
            let ef = self.e_f(s);
            if let Some((lo, hi)) = prod.q_range() {
                for e in lo.max(trunc)..=hi {
                    let part = prod.q_coeff(e);
                    if part.is_zero() {
                        continue;
                    }
                    let slot = per_degree.remove(&e).unwrap_or_else(|| RationalScalar::zero(ell));
                    per_degree.insert(e, &slot + &RationalScalar::from_torus(part).div_torus(&ef));
                }
            }
        }
        for (e, r) in per_degree {
            let t = global(r, &format!("q^{e}-part of (x|y)′"))?;
            acc += &t.mul_mono(&self.q(e));
        }
        Ok(TailSeries::new(&acc, trunc))
    }

    /// `(x|y)′` as an exact fraction `(κ★⁻¹x‖y)`, then expanded.
    pub fn single_bar_prime_exact(&self, book: &ScalarBook, x: &FixedClass, y: &FixedClass, trunc: i64) -> Result<TailSeries> {
        let kx = self.kappa_star_inv_exact(x)?;
        TailSeries::from_rational(&self.double_bar_exact(book, &kx, y)?, trunc)
    }
}

/// Render a matrix of values as CSV.
pub fn gram_csv<T: fmt::Display>(labels: &[String], rows: &[Vec<T>]) -> String {
    let mut out = String::from("row");
    for l in labels {
        out.push(',');
        out.push_str(&csv_field(l));
    }
    out.push('\n');
    for (l, row) in labels.iter().zip(rows) {
        out.push_str(&csv_field(l));
        for v in row {
            out.push(',');
            out.push_str(&csv_field(&v.to_string()));
        }
        out.push('\n');
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
