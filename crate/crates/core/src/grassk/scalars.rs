//! The scalars `a, b, c, r, s, ϑ` and the involutions `β`, `β′`.

use num_bigint::BigInt;
use serde_json::{json, Value};

use super::class::{FixedClass, Space};
use super::model::{members, A1Model, Subset};
use crate::error::{QloopError, Result};
use crate::qring::{neg_q_pow, sign_pow, BarLaurent, TorusScalar};
use crate::uqalg::braid_t;

/// Scalars attached to `λ = ℓω₁`.
#[derive(Clone, Debug)]
pub struct ScalarBook {
    pub ell: usize,
    /// `a_a = (−q)^a`.
    pub a: Vec<BarLaurent>,
    /// `b_a = (−q)^{a−ℓ} q^{−a(ℓ−a)}`.
    pub b: Vec<BarLaurent>,
    /// `T(1′_{ℓℓ}) = r·1′_{ℓ0}`.
    pub r: TorusScalar,
    /// `T(1_{ℓ0}) = s·1_{ℓℓ}`.
    pub s: TorusScalar,
    /// `r = ϑ·⋀𝒲^{t_ℓ}·⋀𝒱^{−ℓ}` on the top component.
    pub theta: BarLaurent,
    /// The class `c`, one monomial per fixed point.
    pub c: FixedClass,
}

impl ScalarBook {
    pub fn new(m: &A1Model) -> Result<Self> {
        let ell = m.ell();
        let full: Subset = (1 << ell) - 1;
        let a = (0..=ell as i64).map(neg_q_pow).collect();
        let b = (0..=ell as i64)
            .map(|a| &neg_q_pow(a - ell as i64) * &BarLaurent::q_pow(-m.dim_f(a as usize)))
            .collect();

        let top = braid_t(m, 0, &FixedClass::unit(ell, ell, Space::Q), 1)?;
        let r = single_value(&top, 0)?;
        let low = braid_t(m, 0, &FixedClass::unit(ell, 0, Space::F), 1)?;
        let s = single_value(&low, ell)?;

        let t_top = m.book(ell).t;
        let norm = m.det_w().pow(t_top).mul(&m.det_v(full).pow(-(ell as i64)));
        let theta = r
            .mul_mono(&norm.inv())
            .as_laurent()
            .ok_or_else(|| QloopError::Consistency(format!("r = {r} is not ϑ times a character")))?;

        let c = FixedClass::from_fn(ell, Space::Q, |a, s| c_value(m, &r, a, s).into());
        Ok(Self { ell, a, b, r, s, theta, c })
    }

    pub fn c_at(&self, a: usize, s: Subset) -> TorusScalar {
        self.c.get(a, s).to_torus().expect("c is a monomial class")
    }

    pub fn to_json(&self) -> Value {
        json!({
            "ell": self.ell,
            "a": self.a.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "b": self.b.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "r": self.r.to_string(),
            "s": self.s.to_string(),
            "theta": self.theta.to_string(),
            "c": self.c.to_json(),
        })
    }
}

/// `c|_S = (−1)^{y(a)} q^{x(a)} q^{−2a²} ⋀𝒲^{−2ℓa} ⋀𝒱^{2ℓ} ⋀(q⁻²𝒬′⊗ℰ′*) · r`.
fn c_value(m: &A1Model, r: &TorusScalar, a: usize, s: Subset) -> TorusScalar {
    let ell = m.ell();
    let (ai, li) = (a as i64, ell as i64);
    let mut mono = m
        .q(m.x_value(a) - 2 * ai * ai)
        .mul(&m.det_w().pow(-2 * li * ai))
        .mul(&m.det_v(s).pow(2 * li));
    for i in members(s, ell) {
        for j in (0..ell).filter(|j| s >> j & 1 == 0) {
            mono = mono.mul(&m.q(-2).mul(&m.z(j)).div(&m.z(i)));
        }
    }
    let sign = BigInt::from(sign_pow(m.y_value(a) as i64));
    &TorusScalar::from_mono(ell, sign, mono) * r
}

/// The value of a class supported at the single fixed point of component
/// `a ∈ {0, ℓ}`.
fn single_value(c: &FixedClass, a: usize) -> Result<TorusScalar> {
    if c.support() != vec![a] {
        return Err(QloopError::Consistency(format!("braid image {c} is not supported on component {a}")));
    }
    c.component(a)[0]
        .to_torus()
        .ok_or_else(|| QloopError::Consistency(format!("braid image {c} is not global")))
}

impl A1Model {
    /// `β = T∘b∘c∘γ` on **W**.
    pub fn beta(&self, book: &ScalarBook, x: &FixedClass) -> Result<FixedClass> {
        let g = self.gamma_f(x)?;
        let g = self.twist_bc(book, &g);
        let t = braid_t(self, 0, &self.to_q(&g), 1)?;
        Ok(self.to_f(&t))
    }

    /// `β′ = T∘b∘c∘γ′` on **W**′.
    pub fn beta_prime(&self, book: &ScalarBook, x: &FixedClass) -> Result<FixedClass> {
        let g = self.gamma_q(x)?;
        let g = self.twist_bc(book, &g);
        braid_t(self, 0, &g, 1)
    }

    fn twist_bc(&self, book: &ScalarBook, g: &FixedClass) -> FixedClass {
        let ell = self.ell();
        g.mul_fn(|a, s| {
            let b = TorusScalar::from_laurent(ell, &book.b[a]);
            &book.c_at(a, s) * &b
        })
    }
}
