//! Crystal-lattice checks on the ℓ = 1 model and the `h`-eigenvalue check.

use serde::Serialize;

use super::signed::{near_delta, non_negative_part};
use crate::error::{QloopError, Result};
use crate::grassk::{A1Model, FixedClass, Op, PairValue, PairingKind, ScalarBook, Space};
use crate::qring::{BarLaurent, TorusScalar, DEFAULT_TRUNCATION};
use crate::uqalg::{kashiwara, Kashiwara};

/// The ℓ = 1 signed basis `{1_{10}, 𝒲⁻¹1_{11}}`.
pub fn rank_one_basis(m: &A1Model) -> Vec<FixedClass> {
    let w_inv = TorusScalar::z_pow(1, 0, -1);
    vec![FixedClass::unit(1, 0, Space::F), FixedClass::unit(1, 1, Space::F).scale_torus(&w_inv)]
        .into_iter()
        .inspect(|c| debug_assert_eq!(c.ell(), m.ell()))
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct CrystalReport {
    pub samples: usize,
    /// `ẽ_j`, `f̃_j` map lattice samples into `L`.
    pub lattice_stable: bool,
    /// `⟨f̃_j x|y⟩ ≡ ⟨x|ẽ_j y⟩` modulo `q⁻¹ℤ[q⁻¹]`.
    pub adjunction_mod_q: bool,
    /// `ẽ_j b`, `f̃_j b` are `±b′` or `0` modulo `q⁻¹L`, and `ẽ_j f̃_j b ≡ b` when `f̃_j b ∉ q⁻¹L`.
    pub crystal_closure: bool,
    /// `⟨b|b′⟩ ∈ δ + q⁻¹ℤ[q⁻¹]` on the windowed basis.
    pub near_orthonormal: bool,
    /// `⟨zⁿv|zᵐv⟩ = δ_{n,m}` exactly for `v = 1_{10}`.
    pub highest_weight_orthonormal: bool,
    pub failures: Vec<String>,
}

impl CrystalReport {
    pub fn passed(&self) -> bool {
        self.lattice_stable
            && self.adjunction_mod_q
            && self.crystal_closure
            && self.near_orthonormal
            && self.highest_weight_orthonormal
    }
}

/// Coordinates in `{1_{10}, 𝒲⁻¹1_{11}}` over the torus ring.
fn rank_one_coords(v: &FixedClass) -> Result<[TorusScalar; 2]> {
    let c0 = v.component(0)[0].clone();
    let c1 = v.component(1)[0].mul_torus(&TorusScalar::z_pow(1, 0, 1));
    let t = |c: crate::qring::RationalScalar| {
        c.to_torus().ok_or_else(|| QloopError::Integrality(format!("{v} is not a global class")))
    };
    Ok([t(c0)?, t(c1)?])
}

/// `q`-exponents of the coordinates are `≤ 0`.
fn in_lattice(v: &FixedClass) -> Result<bool> {
    Ok(rank_one_coords(v)?.iter().all(|c| c.q_range().is_none_or(|(_, hi)| hi <= 0)))
}

/// The class modulo `q⁻¹L`: the `q⁰` parts of its coordinates.
fn mod_q(v: &FixedClass) -> Result<[TorusScalar; 2]> {
    let [a, b] = rank_one_coords(v)?;
    Ok([a.q_coeff(0), b.q_coeff(0)])
}

fn signed_basis_or_zero(v: &FixedClass) -> Result<bool> {
    let [a, b] = mod_q(v)?;
    let monomial = |t: &TorusScalar| t.as_unit().is_some();
    Ok((a.is_zero() && b.is_zero()) || (a.is_zero() && monomial(&b)) || (b.is_zero() && monomial(&a)))
}

/// Crystal-lattice checks on the lattice `L` spanned over `ℤ[q⁻¹]` by
/// `zⁿ·b`, `|n| ≤ window`, for `j ∈ {0, 1}`.
pub fn crystal_checks(m: &A1Model, window: i64) -> Result<CrystalReport> {
    if m.ell() != 1 {
        return Err(QloopError::Precondition(format!("crystal checks need ℓ = 1, got {}", m.ell())));
    }
    let book = ScalarBook::new(m)?;
    let bracket = |x: &FixedClass, y: &FixedClass| -> Result<TorusScalar> {
        match m.pair(&book, x, y, PairingKind::SingleBar, DEFAULT_TRUNCATION)? {
            PairValue::Exact(t) => Ok(t),
            PairValue::Tail(_) => unreachable!(),
        }
    };
    let partial = |t: &TorusScalar| TorusScalar::from_laurent(1, &t.partial());
    let basis = rank_one_basis(m);
    let shifted: Vec<FixedClass> = (-window..=window)
        .flat_map(|n| basis.iter().map(move |b| b.scale_torus(&TorusScalar::z_pow(1, 0, n))))
        .collect();
    let mut samples = shifted.clone();
    // Mixed lattice vectors with q⁻¹ tails.
    for n in -window..window {
        let tail = TorusScalar::term(1, -1, &[n + 1]);
        samples.push(shifted[2 * (n + window) as usize].add(&basis[1].scale_torus(&tail)));
    }
    let mut failures = Vec::new();
    let mut lattice_stable = true;
    let mut crystal_closure = true;
    let mut images = Vec::new();
    for (si, x) in samples.iter().enumerate() {
        for j in 0..2 {
            let fx = kashiwara(j, m, x, Kashiwara::F)?;
            let ex = kashiwara(j, m, x, Kashiwara::E)?;
            for (name, img) in [("f", &fx), ("e", &ex)] {
                if !in_lattice(img)? {
                    lattice_stable = false;
                    failures.push(format!("{name}̃_{j} of sample {si} leaves L: {img}"));
                }
            }
            if si < shifted.len() {
                for (name, img) in [("f", &fx), ("e", &ex)] {
                    if !signed_basis_or_zero(img)? {
                        crystal_closure = false;
                        failures.push(format!("{name}̃_{j} of basis vector {si} is not ±b mod q⁻¹L: {img}"));
                    }
                }
                let [a, b] = mod_q(&fx)?;
                if !(a.is_zero() && b.is_zero()) && mod_q(&kashiwara(j, m, &fx, Kashiwara::E)?)? != mod_q(x)? {
                    crystal_closure = false;
                    failures.push(format!("ẽ_{j}f̃_{j} does not return basis vector {si} mod q⁻¹L"));
                }
            }
            images.push((si, j, fx, ex));
        }
    }
    let mut adjunction_mod_q = true;
    for (xi, j, fx, _) in &images {
        for (yi, j2, _, ey) in &images {
            if j != j2 {
                continue;
            }
            let lhs = partial(&bracket(fx, &samples[*yi])?);
            let rhs = partial(&bracket(&samples[*xi], ey)?);
            if !non_negative_part(&(&lhs - &rhs)).is_zero() {
                adjunction_mod_q = false;
                failures.push(format!("⟨f̃_{j} x{xi}|x{yi}⟩ − ⟨x{xi}|ẽ_{j} x{yi}⟩ = {} not in q⁻¹ℤ[q⁻¹]", &lhs - &rhs));
            }
        }
    }
    let mut near_orthonormal = true;
    for (i, x) in shifted.iter().enumerate() {
        for (k, y) in shifted.iter().enumerate() {
            let v = partial(&bracket(x, y)?);
            if !near_delta(&v, i == k) {
                near_orthonormal = false;
                failures.push(format!("⟨b{i}|b{k}⟩ = {v}"));
            }
        }
    }
    let mut highest_weight_orthonormal = true;
    for n in -window..=window {
        for k in -window..=window {
            let x = basis[0].scale_torus(&TorusScalar::z_pow(1, 0, n));
            let y = basis[0].scale_torus(&TorusScalar::z_pow(1, 0, k));
            let v = bracket(&x, &y)?.partial();
            let expect = if n == k { BarLaurent::one() } else { BarLaurent::zero() };
            if v != expect {
                highest_weight_orthonormal = false;
                failures.push(format!("⟨z^{n}v|z^{k}v⟩ = {v}"));
            }
        }
    }
    Ok(CrystalReport {
        samples: samples.len(),
        lattice_stable,
        adjunction_mod_q,
        crystal_closure,
        near_orthonormal,
        highest_weight_orthonormal,
        failures,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct EigenvalueReport {
    /// `h_{1,1}` and `h_{1,−1}` on `1_{10}`.
    pub h_plus: String,
    pub h_minus: String,
    /// The sign `a₁`.
    pub a1: i64,
    /// The `q`-exponent `e` in `h_{1,1}(1_{10}) = a₁q^e z·1_{10}`.
    pub q_exponent: i64,
    /// Both eigenvalues have the form `±q^{±2}z^{±1}` with matching signs.
    pub shape_ok: bool,
    /// `e = +2`, the orientation `a₁q^{c}z` with `c = 2`.
    pub positive_orientation: bool,
    /// `ā₁ = a₁`.
    pub bar_compatible: bool,
    /// `x^±_r = ±q^k z^r·x^±_0` on the ℓ = 1 model.
    pub loop_homogeneous: bool,
}

impl EigenvalueReport {
    pub fn passed(&self) -> bool {
        self.shape_ok && self.bar_compatible && self.loop_homogeneous
    }
}

/// `h_{1,±1}` on the highest weight vector of the ℓ = 1 model.
pub fn h_eigenvalue_check(m: &A1Model) -> Result<EigenvalueReport> {
    if m.ell() != 1 {
        return Err(QloopError::Precondition(format!("the eigenvalue check needs ℓ = 1, got {}", m.ell())));
    }
    let hp = m.eigenvalue(&Op::H(1), 0)?;
    let hm = m.eigenvalue(&Op::H(-1), 0)?;
    let shape = |t: &TorusScalar, z: i64| -> Option<(i64, i64)> {
        let (pos, mono) = t.as_unit()?;
        (mono.z == vec![z] && mono.q.abs() == 2).then_some((if pos { 1 } else { -1 }, mono.q))
    };
    let (sp, sm) = (shape(&hp, 1), shape(&hm, -1));
    let shape_ok = matches!((sp, sm), (Some((a, e)), Some((b, f))) if a == b && e == -f);
    let (a1, q_exponent) = sp.unwrap_or((0, 0));
    let mut loop_homogeneous = true;
    for v in rank_one_basis(m) {
        for r in -2..=2i64 {
            for (op, op0) in [(Op::XPlus(r), Op::XPlus(0)), (Op::XMinus(r), Op::XMinus(0))] {
                let lhs = m.act(&op, &v)?;
                let rhs = m.act(&op0, &v)?;
                loop_homogeneous &= if rhs.is_zero() { lhs.is_zero() } else { z_degree_of_ratio(&lhs, &rhs) == Some(r) };
            }
        }
    }
    Ok(EigenvalueReport {
        h_plus: hp.to_string(),
        h_minus: hm.to_string(),
        a1,
        q_exponent,
        shape_ok,
        positive_orientation: q_exponent == 2,
        bar_compatible: a1 == 1 || a1 == -1,
        loop_homogeneous,
    })
}

/// `x = ±q^k z^d·y` with a single monomial; returns `d`.
fn z_degree_of_ratio(x: &FixedClass, y: &FixedClass) -> Option<i64> {
    let mut deg = None;
    for ((_, _, u), (_, _, v)) in x.restrictions().zip(y.restrictions()) {
        if u.is_zero() != v.is_zero() {
            return None;
        }
        if u.is_zero() {
            continue;
        }
        let r = u.div(v).to_torus()?;
        let (_, mono) = r.as_unit()?;
        let d: i64 = mono.z.iter().sum();
        if deg.is_some_and(|e| e != d) {
            return None;
        }
        deg = Some(d);
    }
    deg
}
