//! Classes stored by their fixed-point restrictions.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::model::{render_subset, subsets, Subset};
use crate::qring::{BarLaurent, RationalScalar, TailSeries, TorusScalar};

/// Which variety the restrictions live on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Space {
    /// Zero section `⊔ₐ Gr(a, ℓ)`: the module **W**.
    F,
    /// Cotangent bundles `⊔ₐ T*Gr(a, ℓ)`: the module **W**′.
    Q,
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Space::F => "F",
            Space::Q => "Q",
        })
    }
}

/// A localized class: for each component `a` and each `a`-subset `S`, the
/// restriction to the fixed point `S`, in the order of [`subsets`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedClass {
    space: Space,
    ell: usize,
    comps: Vec<Vec<RationalScalar>>,
}

impl FixedClass {
    pub fn zero(ell: usize, space: Space) -> Self {
        let comps = (0..=ell)
            .map(|a| vec![RationalScalar::zero(ell); subsets(ell, a).len()])
            .collect();
        Self { space, ell, comps }
    }

    /// Structure sheaf of component `a`: `1_{ℓa}` on F, `1′_{ℓa}` on Q.
    pub fn unit(ell: usize, a: usize, space: Space) -> Self {
        Self::on_component(ell, space, a, |_| TorusScalar::one(ell))
    }

    /// Class supported on component `a` with restrictions `f(S)`.
    pub fn on_component(
        ell: usize,
        space: Space,
        a: usize,
        f: impl Fn(Subset) -> TorusScalar,
    ) -> Self {
        let mut out = Self::zero(ell, space);
        if a <= ell {
            out.comps[a] = subsets(ell, a).into_iter().map(|s| f(s).into()).collect();
        }
        out
    }

    /// Class with restrictions `f(a, S)` on every component.
    pub fn from_fn(ell: usize, space: Space, f: impl Fn(usize, Subset) -> RationalScalar) -> Self {
        let comps = (0..=ell)
            .map(|a| subsets(ell, a).into_iter().map(|s| f(a, s)).collect())
            .collect();
        Self { space, ell, comps }
    }

    pub(crate) fn from_parts(ell: usize, space: Space, comps: Vec<Vec<RationalScalar>>) -> Self {
        debug_assert_eq!(comps.len(), ell + 1);
        Self { space, ell, comps }
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// The same restrictions read on the other space.
    pub fn relabel(mut self, space: Space) -> Self {
        self.space = space;
        self
    }

    pub fn component(&self, a: usize) -> &[RationalScalar] {
        &self.comps[a]
    }

    pub fn get(&self, a: usize, s: Subset) -> &RationalScalar {
        let idx = subsets(self.ell, a)
            .iter()
            .position(|&t| t == s)
            .expect("subset of the wrong size");
        &self.comps[a][idx]
    }

    /// Iterate over `(a, S, restriction)`.
    pub fn restrictions(&self) -> impl Iterator<Item = (usize, Subset, &RationalScalar)> + '_ {
        self.comps.iter().enumerate().flat_map(move |(a, vals)| {
            subsets(self.ell, a).into_iter().zip(vals.iter()).map(move |(s, v)| (a, s, v))
        })
    }

    /// Components carrying a nonzero restriction.
    pub fn support(&self) -> Vec<usize> {
        (0..=self.ell).filter(|&a| self.comps[a].iter().any(|v| !v.is_zero())).collect()
    }

    /// The component-`a` part of the class.
    pub fn project(&self, a: usize) -> Self {
        let mut out = Self::zero(self.ell, self.space);
        out.comps[a] = self.comps[a].clone();
        out
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().flatten().all(RationalScalar::is_zero)
    }

    /// Every restriction is a Laurent polynomial.
    pub fn is_global(&self) -> bool {
        self.comps.iter().flatten().all(RationalScalar::is_polynomial)
    }

    fn zip_with(&self, o: &Self, f: impl Fn(&RationalScalar, &RationalScalar) -> RationalScalar) -> Self {
        assert_eq!((self.ell, self.space), (o.ell, o.space), "class shape mismatch");
        let comps = self
            .comps
            .iter()
            .zip(&o.comps)
            .map(|(x, y)| x.iter().zip(y).map(|(u, v)| f(u, v)).collect())
            .collect();
        Self { space: self.space, ell: self.ell, comps }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip_with(o, |u, v| u + v)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip_with(o, |u, v| u - v)
    }

    pub fn neg(&self) -> Self {
        self.map(|_, _, v| -v)
    }

    /// Apply `f(a, S, value)` to every restriction.
    pub fn map(&self, f: impl Fn(usize, Subset, &RationalScalar) -> RationalScalar) -> Self {
        let comps = self
            .comps
            .iter()
            .enumerate()
            .map(|(a, vals)| {
                subsets(self.ell, a).into_iter().zip(vals).map(|(s, v)| f(a, s, v)).collect()
            })
            .collect();
        Self { space: self.space, ell: self.ell, comps }
    }

    pub fn scale(&self, c: &BarLaurent) -> Self {
        let t = TorusScalar::from_laurent(self.ell, c);
        self.scale_torus(&t)
    }

    pub fn scale_torus(&self, t: &TorusScalar) -> Self {
        self.map(|_, _, v| v.mul_torus(t))
    }

    pub fn scale_rational(&self, r: &RationalScalar) -> Self {
        self.map(|_, _, v| v * r)
    }

    /// Multiply each restriction by the class `f(a, S)`.
    pub fn mul_fn(&self, f: impl Fn(usize, Subset) -> TorusScalar) -> Self {
        self.map(|a, s, v| if v.is_zero() { v.clone() } else { v.mul_torus(&f(a, s)) })
    }

    /// Pointwise product with another class.
    pub fn mul_class(&self, o: &Self) -> Self {
        self.zip_with(o, |u, v| u * v)
    }

    /// `q ↦ q⁻¹` on every restriction.
    pub fn bar_coeffs(&self) -> Self {
        self.map(|_, _, v| v.bar())
    }

    /// `z ↦ z⁻¹` on every restriction.
    pub fn dagger_coeffs(&self) -> Self {
        self.map(|_, _, v| v.dagger())
    }

    /// `{space, components: [{a, restrictions: [{subset, value}]}]}`.
    pub fn to_json(&self) -> Value {
        let comps: Vec<Value> = (0..=self.ell)
            .filter(|&a| self.comps[a].iter().any(|v| !v.is_zero()))
            .map(|a| {
                let rs: Vec<Value> = subsets(self.ell, a)
                    .into_iter()
                    .zip(&self.comps[a])
                    .map(|(s, v)| json!({"subset": render_subset(s), "value": v.render()}))
                    .collect();
                json!({"a": a, "restrictions": rs})
            })
            .collect();
        json!({"space": self.space.to_string(), "components": comps})
    }
}

impl fmt::Display for FixedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (a, s, v) in self.restrictions() {
            if v.is_zero() {
                continue;
            }
            if !first {
                f.write_str(", ")?;
            }
            first = false;
            write!(f, "[{a}:{}] {v}", render_subset(s))?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Restrictions known as `q⁻¹`-adic tails: elements of the completed module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailClass {
    pub space: Space,
    pub ell: usize,
    pub comps: Vec<Vec<TailSeries>>,
}

impl TailClass {
    /// Expand every restriction of a class to order `trunc`.
    pub fn expand(c: &FixedClass, trunc: i64) -> crate::Result<Self> {
        let comps = (0..=c.ell)
            .map(|a| c.comps[a].iter().map(|v| TailSeries::from_rational(v, trunc)).collect())
            .collect::<crate::Result<Vec<Vec<_>>>>()?;
        Ok(Self { space: c.space, ell: c.ell, comps })
    }

    pub fn truncation_order(&self) -> i64 {
        self.comps.iter().flatten().map(TailSeries::truncation_order).max().unwrap_or(i64::MIN)
    }

    /// Agreement with a class at every known order.
    pub fn agrees_with(&self, c: &FixedClass) -> crate::Result<bool> {
        for a in 0..=self.ell {
            for (t, v) in self.comps[a].iter().zip(&c.comps[a]) {
                let e = TailSeries::from_rational(v, t.truncation_order())?;
                if !t.sub(&e).is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}
