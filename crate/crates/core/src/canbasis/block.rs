//! The block: a filtration basis of **W** over the torus ring together with
//! the matrices of `β` and of `( | )` in it.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::linalg::{self, Matrix};
use crate::error::{QloopError, Result};
use crate::grassk::{A1Model, FixedClass, PairValue, PairingKind, ScalarBook, Space, Subset};
use crate::qring::{BarLaurent, RationalScalar, TorusScalar, DEFAULT_TRUNCATION};

/// One filtration vector `𝒲^{w}(⋀ℰ)^{d}·1` on component `a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterSlot {
    pub a: usize,
    /// Power of `⋀𝒲`.
    pub w: i64,
    /// Power of `⋀ℰ`.
    pub d: i64,
    /// Overall power of `q`.
    pub q: i64,
}

impl FilterSlot {
    pub fn label(&self) -> String {
        let mut s = String::new();
        if self.q != 0 {
            s.push_str(&format!("q^{} ", self.q));
        }
        if self.w != 0 {
            s.push_str(&format!("W^{} ", self.w));
        }
        if self.d != 0 {
            s.push_str(&format!("E^{} ", self.d));
        }
        format!("{s}1_{}", self.a)
    }
}

/// Default filtration: `u_{a,k} = 𝒲^{−ℓa}(⋀ℰ)^{ℓ+k}`, `0 ≤ k < C(ℓ, a)`,
/// ordered by component then `z`-degree.
pub fn default_filtration(m: &A1Model) -> Vec<FilterSlot> {
    let ell = m.ell();
    let li = ell as i64;
    (0..=ell)
        .flat_map(|a| {
            let n = m.subsets(a).len() as i64;
            let ai = a as i64;
            (0..n).map(move |k| FilterSlot { a, w: -li * ai, d: if a == 0 { 0 } else { li + k }, q: 0 })
        })
        .collect()
}

/// `⋀ℰ` is trivial on component 0; its powers only matter for `a > 0`.
pub fn slot_class(m: &A1Model, slot: &FilterSlot, space: Space) -> FixedClass {
    let ell = m.ell();
    FixedClass::on_component(ell, space, slot.a, |s| {
        let mono = m.q(slot.q).mul(&m.det_w().pow(slot.w)).mul(&m.det_e(s).pow(slot.d));
        TorusScalar::from_mono(ell, BigInt::from(1), mono)
    })
}

/// Filtration basis of **W** with `β` and `( | )` in coordinates.
pub struct BlockSpace<'a> {
    pub model: &'a A1Model,
    pub book: ScalarBook,
    pub slots: Vec<FilterSlot>,
    pub basis: Vec<FixedClass>,
    /// `β(u_j) = Σ_i beta[i][j]·u_i`; `β` is semilinear for `q ↦ q⁻¹`.
    pub beta: Vec<Vec<TorusScalar>>,
    /// `gram[i][j] = (u_i|u_j)`.
    pub gram: Vec<Vec<TorusScalar>>,
    /// Per component: inverse of the restriction matrix of its slots.
    coord_inv: Vec<(Vec<usize>, Matrix)>,
}

impl<'a> BlockSpace<'a> {
    pub fn new(model: &'a A1Model) -> Result<Self> {
        Self::with_filtration(model, default_filtration(model))
    }

    pub fn with_filtration(model: &'a A1Model, slots: Vec<FilterSlot>) -> Result<Self> {
        let ell = model.ell();
        let book = ScalarBook::new(model)?;
        let basis: Vec<FixedClass> = slots.iter().map(|s| slot_class(model, s, Space::F)).collect();
        let mut coord_inv = Vec::new();
        for a in 0..=ell {
            let idx: Vec<usize> = (0..slots.len()).filter(|&i| slots[i].a == a).collect();
            let subs = model.subsets(a);
            if idx.len() != subs.len() {
                return Err(QloopError::Dimension(format!(
                    "component {a} has {} filtration vectors for rank {}",
                    idx.len(),
                    subs.len()
                )));
            }
            let u: Matrix = (0..subs.len())
                .map(|row| idx.iter().map(|&i| basis[i].component(a)[row].clone()).collect())
                .collect();
            let inv = linalg::inverse(&u, ell)
                .map_err(|_| QloopError::Dimension(format!("filtration on component {a} is not a basis")))?;
            coord_inv.push((idx, inv));
        }
        let mut block = Self { model, book, slots, basis, beta: Vec::new(), gram: Vec::new(), coord_inv };
        let betas = block
            .basis
            .iter()
            .map(|u| block.coordinates(&model.beta(&block.book, u)?))
            .collect::<Result<Vec<_>>>()?;
        let n = block.basis.len();
        block.beta = (0..n).map(|i| (0..n).map(|j| betas[j][i].clone()).collect()).collect();
        block.gram = block.gram_of(&block.basis)?;
        Ok(block)
    }

    pub fn ell(&self) -> usize {
        self.model.ell()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn labels(&self) -> Vec<String> {
        self.slots.iter().map(FilterSlot::label).collect()
    }

    /// Coordinates over the fraction field.
    pub fn rational_coordinates(&self, v: &FixedClass) -> Result<Vec<RationalScalar>> {
        if v.ell() != self.ell() {
            return Err(QloopError::Dimension(format!("class for ℓ = {} in a block for ℓ = {}", v.ell(), self.ell())));
        }
        let ell = self.ell();
        let mut out = vec![RationalScalar::zero(ell); self.dim()];
        for (a, (idx, inv)) in self.coord_inv.iter().enumerate() {
            let col: Matrix = v.component(a).iter().map(|x| vec![x.clone()]).collect();
            let c = linalg::mul(inv, &col, ell);
            for (k, &i) in idx.iter().enumerate() {
                out[i] = c[k][0].clone();
            }
        }
        Ok(out)
    }

    /// Coordinates over the torus ring; fails if `v` is not in the lattice.
    pub fn coordinates(&self, v: &FixedClass) -> Result<Vec<TorusScalar>> {
        self.rational_coordinates(v)?
            .into_iter()
            .map(|c| {
                c.to_torus()
                    .ok_or_else(|| QloopError::Integrality(format!("coordinate {c} of {v} is not a Laurent polynomial")))
            })
            .collect()
    }

    pub fn combine(&self, coords: &[TorusScalar], space: Space) -> FixedClass {
        let mut out = FixedClass::zero(self.ell(), space);
        for (c, u) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                out = out.add(&u.scale_torus(c).relabel(space));
            }
        }
        out
    }

    /// `(x|y)` as a Laurent polynomial.
    pub fn pair(&self, x: &FixedClass, y: &FixedClass) -> Result<TorusScalar> {
        match self.model.pair(&self.book, x, y, PairingKind::SingleBar, DEFAULT_TRUNCATION)? {
            PairValue::Exact(t) => Ok(t),
            PairValue::Tail(_) => unreachable!("( | ) is exact"),
        }
    }

    /// `(x‖y)` for `x` in **W** and `y` in **W**′.
    pub fn pair_dual(&self, x: &FixedClass, y: &FixedClass) -> Result<TorusScalar> {
        match self.model.pair(&self.book, x, y, PairingKind::DoubleBar, DEFAULT_TRUNCATION)? {
            PairValue::Exact(t) => Ok(t),
            PairValue::Tail(_) => unreachable!("( ‖ ) is exact"),
        }
    }

    pub fn gram_of(&self, v: &[FixedClass]) -> Result<Vec<Vec<TorusScalar>>> {
        use rayon::prelude::*;
        let pairs: Vec<(usize, usize)> = (0..v.len()).flat_map(|i| (0..v.len()).map(move |j| (i, j))).collect();
        let vals = pairs.par_iter().map(|&(i, j)| self.pair(&v[i], &v[j])).collect::<Result<Vec<_>>>()?;
        Ok(vals.chunks(v.len().max(1)).map(<[TorusScalar]>::to_vec).collect())
    }

    /// `∂` of the Gram matrix.
    pub fn partial_gram(&self) -> Vec<Vec<BarLaurent>> {
        self.gram.iter().map(|r| r.iter().map(TorusScalar::partial).collect()).collect()
    }

    /// `B·bar(B) = 1`: the matrix form of `β² = id`.
    pub fn beta_is_involutive(&self) -> bool {
        let ell = self.ell();
        let b = linalg::from_torus(&self.beta);
        let bb: Vec<Vec<TorusScalar>> = self.beta.iter().map(|r| r.iter().map(TorusScalar::bar).collect()).collect();
        linalg::mul(&b, &linalg::from_torus(&bb), ell) == linalg::identity(self.dim(), ell)
    }

    /// `(u_j|u_i) = dagger((u_i|u_j))`.
    pub fn gram_is_symmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.gram[j][i] == self.gram[i][j].dagger()))
    }

    pub fn subsets(&self, a: usize) -> Vec<Subset> {
        self.model.subsets(a)
    }
}

impl BlockSpace<'_> {
    /// Matrix of `κ★` from the filtration of **W** to the same filtration on **W**′.
    pub fn kappa_matrix(&self) -> Result<Vec<Vec<TorusScalar>>> {
        let cols = self
            .basis
            .iter()
            .map(|u| self.coordinates(&self.model.kappa_star(u)?.relabel(Space::F)))
            .collect::<Result<Vec<_>>>()?;
        let n = self.dim();
        Ok((0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect())
    }

    /// `det κ★`, and whether it is invertible in the `q⁻¹`-adic completion.
    pub fn kappa_determinant(&self, trunc: i64) -> Result<(TorusScalar, bool)> {
        let det = linalg::determinant(&linalg::from_torus(&self.kappa_matrix()?), self.ell());
        let det = det
            .to_torus()
            .ok_or_else(|| QloopError::Integrality(format!("det κ★ = {det} is not a Laurent polynomial")))?;
        let unit = crate::qring::TailSeries::inverse_of(&det, trunc).is_ok();
        Ok((det, unit))
    }
}
