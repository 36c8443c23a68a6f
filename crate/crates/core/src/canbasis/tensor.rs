//! Factorization `W₁(x) ⊗ W₁(y) → W₂` over the completion in `y/x`.
//!
//! The tensor action uses `e ↦ e⊗1 + k⊗e`, `f ↦ f⊗k⁻¹ + 1⊗f`, `k ↦ k⊗k` on
//! the Kac–Moody generators of both nodes only; the map is characterized by
//! `1⊗1 ↦ 1_{20}` and compatibility with these generators.

use serde::Serialize;

use super::block::BlockSpace;
use super::linalg::{self, Matrix};
use crate::error::{QloopError, Result};
use crate::grassk::{A1Model, FixedClass, Space};
use crate::qring::{series_expand, ExpansionDir, RationalScalar, TorusScalar};
use crate::uqalg::{Letter, ModuleHandle};

const GENERATORS: [Letter; 8] = [
    Letter::E(0),
    Letter::F(0),
    Letter::K(0, 1),
    Letter::K(0, -1),
    Letter::E(1),
    Letter::F(1),
    Letter::K(1, 1),
    Letter::K(1, -1),
];

#[derive(Clone, Debug, Serialize)]
pub struct FactorizationReport {
    pub order: usize,
    /// Truncation of the map used for the residual.
    pub map_order: usize,
    /// The exact map intertwines every generator.
    pub exact_intertwiner: bool,
    /// Every entry and the determinant of the map expand in `y/x`, with a
    /// unit leading determinant coefficient.
    pub expandable: bool,
    /// Lowest `y`-degree of a nonzero residual, if any.
    pub residual_valuation: Option<i64>,
    /// `y⁰`-coefficient of the map in the filtration basis.
    pub leading_term: Vec<Vec<String>>,
    /// `k` on `1⊗1` and on `1_{20}`.
    pub top_weight: (String, String),
    pub failures: Vec<String>,
}

impl FactorizationReport {
    pub fn passed(&self) -> bool {
        self.exact_intertwiner && self.expandable && self.residual_valuation.is_none_or(|v| v > self.order as i64)
    }
}

/// Matrix of a letter on the ℓ = 1 model in `{1_{10}, 1_{11}}`, with `z`
/// renamed to the variable `var` of a rank-2 ring.
fn factor_matrix(m1: &A1Model, l: &Letter, var: usize) -> Result<Vec<Vec<RationalScalar>>> {
    let perm = if var == 0 { [0, 1] } else { [1, 0] };
    let mut cols = Vec::new();
    for a in 0..2 {
        let img = m1.apply(l, &FixedClass::unit(1, a, Space::F))?;
        cols.push([img.component(0)[0].clone(), img.component(1)[0].clone()]);
    }
    Ok((0..2)
        .map(|i| (0..2).map(|j| cols[j][i].extend_rank(1).permute(&perm)).collect())
        .collect())
}

fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let n = b.len();
    (0..a.len() * n)
        .map(|i| (0..a.len() * n).map(|j| &a[i / n][j / n] * &b[i % n][j % n]).collect())
        .collect()
}

fn add(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect()).collect()
}

/// A generator on `W₁(x) ⊗ W₁(y)` in the basis `v_a ⊗ v_b`, index `2a + b`.
fn tensor_matrix(m1: &A1Model, l: &Letter) -> Result<Matrix> {
    let one = linalg::identity(2, 2);
    let left = |l: &Letter| factor_matrix(m1, l, 0);
    let right = |l: &Letter| factor_matrix(m1, l, 1);
    Ok(match *l {
        Letter::E(i) => add(&kron(&left(l)?, &one), &kron(&left(&Letter::K(i, 1))?, &right(l)?)),
        Letter::F(i) => add(&kron(&left(l)?, &right(&Letter::K(i, -1))?), &kron(&one, &right(l)?)),
        Letter::K(..) => kron(&left(l)?, &right(l)?),
        _ => return Err(QloopError::Unassigned(format!("{l} on a tensor product"))),
    })
}

/// Restriction coordinates of an ℓ = 2 class, in fixed-point order.
fn restriction_vector(c: &FixedClass) -> Vec<RationalScalar> {
    c.restrictions().map(|(_, _, v)| v.clone()).collect()
}

/// Component of the tensor index `2a + b`; restriction indices of ℓ = 2
/// group into the same index sets `{0}, {1, 2}, {3}`.
fn tensor_component(i: usize) -> usize {
    (i >> 1) + (i & 1)
}

pub fn tensor_factorization_check(order: usize) -> Result<FactorizationReport> {
    let m1 = A1Model::new(1)?;
    let m2 = A1Model::new(2)?;
    let block = BlockSpace::new(&m2)?;
    let gens_v: Vec<Matrix> = GENERATORS.iter().map(|l| tensor_matrix(&m1, l)).collect::<Result<_>>()?;
    let apply_v = |g: &Matrix, v: &[RationalScalar]| -> Vec<RationalScalar> {
        let col: Matrix = v.iter().map(|x| vec![x.clone()]).collect();
        linalg::mul(g, &col, 2).into_iter().map(|r| r[0].clone()).collect()
    };

    // Pairs (v, φ(v)) generated from 1⊗1 ↦ 1_{20}.
    let mut start = vec![RationalScalar::zero(2); 4];
    start[0] = RationalScalar::one(2);
    let mut pairs = vec![(start, FixedClass::unit(2, 0, Space::F))];
    let mut frontier = pairs.clone();
    for _ in 0..3 {
        let mut next = Vec::new();
        for (v, w) in &frontier {
            for (gi, l) in GENERATORS.iter().enumerate() {
                if matches!(l, Letter::K(..)) {
                    continue;
                }
                let gv = apply_v(&gens_v[gi], v);
                if gv.iter().all(RationalScalar::is_zero) {
                    continue;
                }
                next.push((gv, m2.apply(l, w)?));
            }
        }
        pairs.extend(next.iter().cloned());
        frontier = next;
    }

    // Solve φ component by component.
    let comps: Vec<Vec<usize>> = (0..3).map(|c| (0..4).filter(|&i| tensor_component(i) == c).collect()).collect();
    let mut phi = vec![vec![RationalScalar::zero(2); 4]; 4];
    for (c, idx) in comps.iter().enumerate() {
        let mut chosen_v: Vec<Vec<RationalScalar>> = Vec::new();
        let mut chosen_w: Vec<Vec<RationalScalar>> = Vec::new();
        for (v, w) in &pairs {
            if chosen_v.len() == idx.len() {
                break;
            }
            if idx.iter().all(|&i| v[i].is_zero()) || (0..4).any(|i| !idx.contains(&i) && !v[i].is_zero()) {
                continue;
            }
            let cand: Vec<RationalScalar> = idx.iter().map(|&i| v[i].clone()).collect();
            let mut trial = chosen_v.clone();
            trial.push(cand.clone());
            // Each candidate is nonzero; a full set must have nonzero determinant.
            if trial.len() < idx.len() || !linalg::determinant(&trial, 2).is_zero() {
                let rw = restriction_vector(w);
                chosen_v.push(cand);
                chosen_w.push(idx.iter().map(|&i| rw[i].clone()).collect());
            }
        }
        if chosen_v.len() != idx.len() {
            return Err(QloopError::Consistency(format!("generated vectors do not span tensor component {c}")));
        }
        // φ_c·V = W with the chosen vectors as columns, solved as Vᵀφ_cᵀ = Wᵀ.
        let sol = linalg::solve(&chosen_v, &chosen_w)?;
        for (r, &i) in idx.iter().enumerate() {
            for (s, &j) in idx.iter().enumerate() {
                phi[j][i] = sol[r][s].clone();
            }
        }
    }

    let mut failures = Vec::new();
    // Exact intertwining in restriction coordinates.
    let mut exact_intertwiner = true;
    for (gi, l) in GENERATORS.iter().enumerate() {
        let lhs_cols: Vec<Vec<RationalScalar>> = (0..4)
            .map(|j| {
                let col: Vec<RationalScalar> = (0..4).map(|i| phi[i][j].clone()).collect();
                restriction_vector(&m2.apply(l, &class_of(&col))?).into_iter().map(Ok).collect()
            })
            .collect::<Result<_>>()?;
        let rhs = linalg::mul(&phi, &gens_v[gi], 2);
        for i in 0..4 {
            for j in 0..4 {
                if lhs_cols[j][i] != rhs[i][j] {
                    exact_intertwiner = false;
                    failures.push(format!("{l}: entry ({i}, {j}) differs"));
                }
            }
        }
    }

    // The map in the filtration basis of W₂.
    let phi_u: Matrix = {
        let cols = (0..4)
            .map(|j| {
                let col: Vec<RationalScalar> = (0..4).map(|i| phi[i][j].clone()).collect();
                block.rational_coordinates(&class_of(&col))
            })
            .collect::<Result<Vec<_>>>()?;
        (0..4).map(|i| (0..4).map(|j| cols[j][i].clone()).collect()).collect()
    };
    let gens_u: Vec<Vec<Vec<TorusScalar>>> = GENERATORS
        .iter()
        .map(|l| {
            let cols = block
                .basis
                .iter()
                .map(|u| block.coordinates(&m2.apply(l, u)?))
                .collect::<Result<Vec<_>>>()?;
            Ok((0..4).map(|i| (0..4).map(|j| cols[j][i].clone()).collect()).collect())
        })
        .collect::<Result<_>>()?;
    let gens_vt: Vec<Vec<Vec<TorusScalar>>> =
        gens_v.iter().map(|g| linalg::to_torus(g, "tensor generator")).collect::<Result<_>>()?;
    let min_y = |m: &[Vec<TorusScalar>]| {
        m.iter().flatten().flat_map(|t| t.terms().map(|(mo, _)| mo.z[1]).collect::<Vec<_>>()).min().unwrap_or(0)
    };
    let margin = gens_u.iter().chain(&gens_vt).map(|g| -min_y(g)).max().unwrap_or(0).max(0) as usize;
    let map_order = order + margin;

    let mut expandable = true;
    let mut phi_n = vec![vec![TorusScalar::zero(2); 4]; 4];
    let mut leading_term = vec![vec![String::new(); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            match series_expand(&phi_u[i][j], 1, ExpansionDir::AtZero, map_order) {
                Ok(e) => {
                    leading_term[i][j] = e.coeffs[0].to_string();
                    for (k, c) in e.coeffs.iter().enumerate() {
                        phi_n[i][j] += &(c * &TorusScalar::z_pow(2, 1, k as i64));
                    }
                }
                Err(err) => {
                    expandable = false;
                    failures.push(format!("entry ({i}, {j}) = {}: {err}", phi_u[i][j]));
                }
            }
        }
    }
    let det = linalg::determinant(&phi_u, 2);
    match series_expand(&det, 1, ExpansionDir::AtZero, 0) {
        Ok(e) if e.coeffs[0].is_unit() => {}
        Ok(e) => {
            expandable = false;
            failures.push(format!("determinant leading coefficient {} is not a unit", e.coeffs[0]));
        }
        Err(err) => {
            expandable = false;
            failures.push(format!("determinant {det}: {err}"));
        }
    }

    // Residual of the truncated map.
    let mut residual_valuation: Option<i64> = None;
    if expandable {
        let mul = |a: &[Vec<TorusScalar>], b: &[Vec<TorusScalar>]| -> Vec<Vec<TorusScalar>> {
            (0..4)
                .map(|i| {
                    (0..4)
                        .map(|j| {
                            let mut s = TorusScalar::zero(2);
                            for k in 0..4 {
                                s += &(&a[i][k] * &b[k][j]);
                            }
                            s
                        })
                        .collect()
                })
                .collect()
        };
        for (gu, gv) in gens_u.iter().zip(&gens_vt) {
            let (l, r) = (mul(gu, &phi_n), mul(&phi_n, gv));
            for i in 0..4 {
                for j in 0..4 {
                    let d = &l[i][j] - &r[i][j];
                    if let Some(v) = d.terms().map(|(mo, _)| mo.z[1]).min() {
                        residual_valuation = Some(residual_valuation.map_or(v, |w| w.min(v)));
                    }
                }
            }
        }
    }
    let k0 = GENERATORS.iter().position(|l| *l == Letter::K(0, 1)).unwrap();
    let top_weight = (gens_v[k0][0][0].to_string(), m2.apply(&Letter::K(0, 1), &FixedClass::unit(2, 0, Space::F))?.component(0)[0].to_string());
    Ok(FactorizationReport {
        order,
        map_order,
        exact_intertwiner,
        expandable,
        residual_valuation,
        leading_term,
        top_weight,
        failures,
    })
}

/// The ℓ = 2 class with restriction coordinates `v` in fixed-point order.
fn class_of(v: &[RationalScalar]) -> FixedClass {
    FixedClass::from_parts(2, Space::F, vec![vec![v[0].clone()], vec![v[1].clone(), v[2].clone()], vec![v[3].clone()]])
}
