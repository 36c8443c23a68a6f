//! The model as a module over the quantum loop algebra.

use num_bigint::BigInt;

use super::class::FixedClass;
use super::model::A1Model;
use super::ops::Op;
use crate::error::{QloopError, Result};
use crate::qring::{BarLaurent, TorusScalar};
use crate::uqalg::{Letter, ModuleHandle};

impl A1Model {
    /// Translate a letter of the finite node into a model operator.
    fn finite_op(l: &Letter) -> Option<Op> {
        Some(match *l {
            Letter::E(0) => Op::XPlus(0),
            Letter::F(0) => Op::XMinus(0),
            Letter::K(0, p) => Op::K(p),
            Letter::EDiv(0, n) => Op::EDiv(n),
            Letter::FDiv(0, n) => Op::FDiv(n),
            Letter::XPlus(0, r) => Op::XPlus(r),
            Letter::XMinus(0, r) => Op::XMinus(r),
            Letter::KPlus(0, n) => Op::KPlus(n),
            Letter::KMinus(0, n) => Op::KMinus(n),
            Letter::H(0, s) => Op::H(s),
            Letter::P(0, s) => Op::P(s),
            _ => return None,
        })
    }

    /// Spanning classes `⋀ℰ^k` on component `a`, `0 ≤ k < C(ℓ, a)`, on F.
    pub fn det_power_classes(&self) -> Vec<FixedClass> {
        let ell = self.ell();
        let mut out = Vec::new();
        for a in 0..=ell {
            for k in 0..self.subsets(a).len() as i64 {
                out.push(FixedClass::on_component(ell, super::Space::F, a, |s| {
                    TorusScalar::from_mono(ell, BigInt::from(1), self.det_e(s).pow(k))
                }));
            }
        }
        out
    }
}

/// Kac–Moody generators of the affine node:
/// `e₀ = q²x⁻_1 k⁻¹`, `f₀ = q⁻²k x⁺_{−1}`, `k₀ = k⁻¹`.
impl ModuleHandle for A1Model {
    type Vector = FixedClass;

    fn rank(&self) -> usize {
        1
    }

    fn apply(&self, l: &Letter, v: &FixedClass) -> Result<FixedClass> {
        if let Some(op) = Self::finite_op(l) {
            return self.act(&op, v);
        }
        match *l {
            Letter::E(1) => Ok(self.act_word(&[Op::XMinus(1), Op::K(-1)], v)?.scale(&BarLaurent::q_pow(2))),
            Letter::F(1) => Ok(self.act_word(&[Op::K(1), Op::XPlus(-1)], v)?.scale(&BarLaurent::q_pow(-2))),
            Letter::K(1, p) => self.act(&Op::K(-p), v),
            Letter::EDiv(1, _) | Letter::FDiv(1, _) => Err(QloopError::Unassigned(l.to_string())),
            _ => Err(QloopError::Unassigned(format!("{l} on the A1 model"))),
        }
    }

    fn add(&self, a: &FixedClass, b: &FixedClass) -> FixedClass {
        a.add(b)
    }

    fn scale(&self, v: &FixedClass, c: &BarLaurent) -> FixedClass {
        v.scale(c)
    }

    fn div_exact(&self, v: &FixedClass, c: &BarLaurent) -> Result<FixedClass> {
        if c.is_zero() {
            return Err(QloopError::Integrality("division by zero".into()));
        }
        let d = TorusScalar::from_laurent(self.ell(), c);
        Ok(v.map(|_, _, x| x.div_torus(&d)))
    }

    fn zero_like(&self, v: &FixedClass) -> FixedClass {
        FixedClass::zero(v.ell(), v.space())
    }

    fn is_zero(&self, v: &FixedClass) -> bool {
        v.is_zero()
    }

    fn weight_parts(&self, node: usize, v: &FixedClass) -> Vec<(i64, FixedClass)> {
        let ell = self.ell() as i64;
        v.support()
            .into_iter()
            .map(|a| {
                let n = ell - 2 * a as i64;
                (if node == 0 { n } else { -n }, v.project(a))
            })
            .collect()
    }

    fn string_bound(&self, _node: usize) -> u32 {
        self.ell() as u32
    }

    fn spanning_set(&self) -> Vec<FixedClass> {
        self.det_power_classes()
    }

    fn render(&self, v: &FixedClass) -> String {
        v.to_string()
    }
}
