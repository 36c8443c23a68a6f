//! Duality maps: complement pullback, Serre duality, the `γ` maps and the
//! pushforward `κ★` from the zero section.

use num_bigint::BigInt;

use super::class::{FixedClass, Space, TailClass};
use super::model::A1Model;
use crate::error::{QloopError, Result};
use crate::qring::{neg_q_pow, sign_pow, RationalScalar, TailSeries, TorusScalar};

impl A1Model {
    fn check(&self, c: &FixedClass, space: Space) -> Result<()> {
        if c.ell() != self.ell() || c.space() != space {
            return Err(QloopError::Dimension(format!(
                "expected a {space} class for ℓ = {}, got {} for ℓ = {}",
                self.ell(),
                c.space(),
                c.ell()
            )));
        }
        Ok(())
    }

    /// Complement map `S ↦ S^c` with `z ↦ z⁻¹`: component `a` goes to `ℓ−a`.
    pub fn omega_pullback(&self, y: &FixedClass) -> FixedClass {
        FixedClass::from_fn(self.ell(), y.space(), |b, s| {
            y.get(self.ell() - b, self.complement(s)).dagger()
        })
    }

    /// Grothendieck–Serre dual `(−1)^{dim} x^∨ ⊗ Ω`, with
    /// `Ω_F|_S = Π z_s/z_j` and `Ω_Q = q^{−dim}`.
    pub fn serre_dual(&self, x: &FixedClass) -> FixedClass {
        let ell = self.ell();
        x.map(|a, s, v| {
            let (dim, omega) = match x.space() {
                Space::F => (self.dim_f(a), TorusScalar::from_mono(ell, BigInt::from(1), self.omega_f(s))),
                Space::Q => (2 * self.dim_f(a), TorusScalar::q_pow(ell, -2 * self.dim_f(a))),
            };
            v.bar().dagger().mul_torus(&omega.scale_int(&BigInt::from(sign_pow(dim))))
        })
    }

    /// Semilinear involution of **W**:
    /// `γ(x)|_S = (−q)^{a(ℓ−a)} · x̄|_{S^c} · Ω_F|_{S^c}^†`.
    pub fn gamma_f(&self, x: &FixedClass) -> Result<FixedClass> {
        self.check(x, Space::F)?;
        let ell = self.ell();
        Ok(FixedClass::from_fn(ell, Space::F, |b, s| {
            let a = ell - b;
            let sc = self.complement(s);
            let om = TorusScalar::from_mono(ell, BigInt::from(1), self.omega_f(sc)).dagger();
            let c = &TorusScalar::from_laurent(ell, &neg_q_pow(self.dim_f(a))) * &om;
            x.get(a, sc).bar().mul_torus(&c)
        }))
    }

    /// Semilinear involution of **W**′: `γ′(x)|_S = q^{a(ℓ−a)} · x̄|_{S^c}`.
    pub fn gamma_q(&self, x: &FixedClass) -> Result<FixedClass> {
        self.check(x, Space::Q)?;
        let ell = self.ell();
        Ok(FixedClass::from_fn(ell, Space::Q, |b, s| {
            let a = ell - b;
            let c = TorusScalar::q_pow(ell, self.dim_f(a));
            x.get(a, self.complement(s)).bar().mul_torus(&c)
        }))
    }

    /// Pushforward **W** → **W**′ along the zero section: multiply by `e_N`.
    pub fn kappa_star(&self, x: &FixedClass) -> Result<FixedClass> {
        self.check(x, Space::F)?;
        Ok(x.mul_fn(|_, s| self.e_n(s)).relabel(Space::Q))
    }

    /// Inverse of `κ★`, valued in the `q⁻¹`-adic completion of **W**.
    pub fn kappa_star_inv(&self, y: &FixedClass, trunc: i64) -> Result<TailClass> {
        self.check(y, Space::Q)?;
        let ell = self.ell();
        let comps = (0..=ell)
            .map(|a| {
                self.subsets(a)
                    .into_iter()
                    .zip(y.component(a))
                    .map(|(s, v)| TailSeries::from_rational(&v.div_torus(&self.e_n(s)), trunc))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TailClass { space: Space::F, ell, comps })
    }

    /// `κ★⁻¹` as an exact fraction (no completion): divide by `e_N`.
    pub fn kappa_star_inv_exact(&self, y: &FixedClass) -> Result<FixedClass> {
        self.check(y, Space::Q)?;
        Ok(y.map(|_, s, v| v.div_torus(&self.e_n(s))).relabel(Space::F))
    }

    /// Convert between **W** and **W**′ restrictions without completion.
    pub(crate) fn to_q(&self, x: &FixedClass) -> FixedClass {
        match x.space() {
            Space::Q => x.clone(),
            Space::F => x.mul_fn(|_, s| self.e_n(s)).relabel(Space::Q),
        }
    }

    pub(crate) fn to_f(&self, x: &FixedClass) -> FixedClass {
        match x.space() {
            Space::F => x.clone(),
            Space::Q => x.map(|_, s, v| v.div_torus(&self.e_n(s))).relabel(Space::F),
        }
    }

    /// `Σ_S x|_S / e(S)` for the F or Q Euler class, as an exact fraction.
    pub fn integrate(&self, x: &FixedClass) -> RationalScalar {
        let mut acc = RationalScalar::zero(self.ell());
        for (_, s, v) in x.restrictions() {
            if v.is_zero() {
                continue;
            }
            let e = match x.space() {
                Space::F => self.e_f(s),
                Space::Q => self.e_q(s),
            };
            acc = &acc + &v.div_torus(&e);
        }
        acc
    }
}

impl A1Model {
    /// Weyl permutation of the torus: `(σx)|_{σ(S)} = σ(x|_S)`, where `σ`
    /// sends `z_i` to `z_{perm[i]}`.
    pub fn permute_class(&self, x: &FixedClass, perm: &[usize]) -> Result<FixedClass> {
        let ell = self.ell();
        let mut sorted = perm.to_vec();
        sorted.sort_unstable();
        if sorted != (0..ell).collect::<Vec<_>>() {
            return Err(QloopError::Invalid(format!("{perm:?} is not a permutation of 0..{ell}")));
        }
        let mut inv = vec![0; ell];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        Ok(FixedClass::from_fn(ell, x.space(), |a, s| {
            let pre = (0..ell).filter(|&j| s >> j & 1 == 1).fold(0, |acc, j| acc | 1 << inv[j]);
            x.get(a, pre).permute(perm)
        }))
    }
}
