//! Signed bases: verification, triangular bar-fixing and duals.

use serde::Serialize;

use super::block::BlockSpace;
use super::linalg;
use crate::error::{QloopError, Result};
use crate::grassk::{FixedClass, Space};
use crate::qring::{BarLaurent, TailSeries, TorusScalar};

/// `t ∈ δ + q⁻¹ℤ[q⁻¹]` coefficient-wise in every torus character.
pub fn near_delta(t: &TorusScalar, delta: bool) -> bool {
    let d = if delta { t - &TorusScalar::one(t.rank()) } else { t.clone() };
    d.in_negative_q_part()
}

/// The part of `t` with `q`-exponent `≥ 0`: the obstruction modulo `q⁻¹`.
pub fn non_negative_part(t: &TorusScalar) -> TorusScalar {
    TorusScalar::from_terms(t.rank(), t.terms().filter(|(m, _)| m.q >= 0).map(|(m, c)| (m.clone(), c.clone())))
}

fn negative_part(t: &TorusScalar) -> TorusScalar {
    TorusScalar::from_terms(t.rank(), t.terms().filter(|(m, _)| m.q < 0).map(|(m, c)| (m.clone(), c.clone())))
}

#[derive(Clone, Debug, Serialize)]
pub struct CandidateReport {
    pub label: String,
    pub bar_fixed: bool,
    pub norm_ok: bool,
    /// `(b|b)` modulo `q⁻¹`.
    pub norm_mod_q: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SignedBasisReport {
    pub candidates: Vec<CandidateReport>,
    /// `(b_i|b_j)` modulo `q⁻¹`, rendered.
    pub pairwise: Vec<Vec<String>>,
    pub near_orthogonal: bool,
    /// The candidates form a basis of the block over the torus ring.
    pub spanning: bool,
    pub verdict: bool,
}

/// Check `β(b) = b`, `(b|b') ∈ δ + q⁻¹ℤ[q⁻¹]` for every pair and every torus
/// character (so the whole `X`-orbit is covered), and that the candidates
/// form a basis with unit determinant.
pub fn verify_signed_basis(block: &BlockSpace, candidates: &[(String, FixedClass)]) -> Result<SignedBasisReport> {
    let classes: Vec<FixedClass> = candidates.iter().map(|(_, c)| c.clone()).collect();
    let gram = block.gram_of(&classes)?;
    let mut reports = Vec::new();
    for (i, (label, b)) in candidates.iter().enumerate() {
        let bar_fixed = block.model.beta(&block.book, b)? == *b;
        reports.push(CandidateReport {
            label: label.clone(),
            bar_fixed,
            norm_ok: near_delta(&gram[i][i], true),
            norm_mod_q: non_negative_part(&gram[i][i]).to_string(),
        });
    }
    let n = classes.len();
    let near_orthogonal = (0..n).all(|i| (0..n).all(|j| i == j || near_delta(&gram[i][j], false)));
    let pairwise = gram.iter().map(|r| r.iter().map(|t| non_negative_part(t).to_string()).collect()).collect();
    let spanning = n == block.dim() && {
        let coords = classes.iter().map(|c| block.rational_coordinates(c)).collect::<Result<Vec<_>>>()?;
        let det = linalg::determinant(&coords, block.ell());
        det.to_torus().is_some_and(|d| d.is_unit())
    };
    let verdict = spanning && near_orthogonal && reports.iter().all(|r| r.bar_fixed && r.norm_ok);
    Ok(SignedBasisReport { candidates: reports, pairwise, near_orthogonal, spanning, verdict })
}

/// A solved basis element with its filtration coordinates.
#[derive(Clone, Debug)]
pub struct SolvedElement {
    pub label: String,
    pub coords: Vec<TorusScalar>,
    pub class: FixedClass,
}

/// Output of the triangular search.
#[derive(Clone, Debug)]
pub struct SolvedBasis {
    pub elements: Vec<SolvedElement>,
    /// `(b_i|b_j)` of the solution.
    pub gram: Vec<Vec<TorusScalar>>,
    /// `|z`-degree| bound per variable for [`SolvedBasis::members`].
    pub window: i64,
}

impl SolvedBasis {
    pub fn classes(&self) -> Vec<FixedClass> {
        self.elements.iter().map(|e| e.class.clone()).collect()
    }

    /// All `z^n·b` with `|n_i| ≤ window`.
    pub fn members(&self) -> Vec<FixedClass> {
        let Some(first) = self.elements.first() else { return Vec::new() };
        let ell = first.class.ell();
        let mut shifts = vec![vec![0i64; ell]];
        for i in 0..ell {
            shifts = shifts
                .into_iter()
                .flat_map(|s| {
                    (-self.window..=self.window).map(move |d| {
                        let mut t = s.clone();
                        t[i] = d;
                        t
                    })
                })
                .collect();
        }
        let mut out = Vec::new();
        for s in &shifts {
            let x = TorusScalar::term(1, 0, s);
            for e in &self.elements {
                out.push(e.class.scale_torus(&x));
            }
        }
        out
    }
}

/// Triangular bar-fixing in the filtration of `block`, followed by norm
/// verification and sign normalization.
///
/// Requires `β(u_j) = q^{2m_j}u_j + Σ_{i<j} β_{ij}u_i`.
pub fn solve_signed_basis(block: &BlockSpace, window: i64) -> Result<SolvedBasis> {
    let n = block.dim();
    let ell = block.ell();
    // Triangularity and diagonal shape.
    let mut shift = vec![0i64; n];
    for j in 0..n {
        for i in j + 1..n {
            if !block.beta[i][j].is_zero() {
                return Err(QloopError::Precondition(format!(
                    "β is not triangular in the filtration: entry ({i}, {j}) = {}",
                    block.beta[i][j]
                )));
            }
        }
        let d = &block.beta[j][j];
        let e = d
            .as_laurent()
            .and_then(|l| l.as_signed_q_power())
            .filter(|&(positive, e)| positive && e % 2 == 0)
            .map(|(_, e)| e)
            .ok_or_else(|| QloopError::Precondition(format!("diagonal entry {d} of β at {j} is not an even power of q")))?;
        shift[j] = e / 2;
    }
    // Normalize u_j ↦ q^{m_j}u_j so that the diagonal becomes 1.
    let r: Vec<Vec<TorusScalar>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| block.beta[i][j].mul_laurent(&BarLaurent::q_pow(-shift[i] - shift[j])))
                .collect()
        })
        .collect();
    let mut p = vec![vec![TorusScalar::zero(ell); n]; n];
    for j in 0..n {
        p[j][j] = TorusScalar::one(ell);
        for i in (0..j).rev() {
            let mut x = TorusScalar::zero(ell);
            for k in i + 1..=j {
                if !r[i][k].is_zero() && !p[k][j].is_zero() {
                    x += &(&r[i][k] * &p[k][j].bar());
                }
            }
            if x.bar() != -&x || !x.q_coeff(0).is_zero() {
                return Err(QloopError::Precondition(format!(
                    "no bar-fixed correction at ({i}, {j}): defect {x} is not antisymmetric"
                )));
            }
            p[i][j] = negative_part(&x);
        }
    }
    let mut elements = Vec::new();
    for j in 0..n {
        let mut coords: Vec<TorusScalar> =
            (0..n).map(|i| p[i][j].mul_laurent(&BarLaurent::q_pow(shift[i]))).collect();
        let lead_negative = coords
            .iter()
            .find(|c| !c.is_zero())
            .and_then(|c| c.leading().map(|(_, k)| k.sign() == num_bigint::Sign::Minus))
            .unwrap_or(false);
        if lead_negative {
            coords = coords.iter().map(|c| -c).collect();
        }
        let class = block.combine(&coords, Space::F);
        elements.push(SolvedElement { label: element_label(block, &coords), coords, class });
    }
    let gram = block.gram_of(&elements.iter().map(|e| e.class.clone()).collect::<Vec<_>>())?;
    for i in 0..n {
        for j in 0..n {
            if !near_delta(&gram[i][j], i == j) {
                return Err(QloopError::Consistency(format!(
                    "bar-fixed solution fails near-orthonormality at ({i}, {j}): {}",
                    gram[i][j]
                )));
            }
        }
    }
    Ok(SolvedBasis { elements, gram, window })
}

fn element_label(block: &BlockSpace, coords: &[TorusScalar]) -> String {
    let labels = block.labels();
    let parts: Vec<String> = coords
        .iter()
        .zip(&labels)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, l)| if c.is_one() { l.clone() } else { format!("({c})·{l}") })
        .collect();
    parts.join(" + ")
}

/// `x = ±m·y` for a torus character `m`.
pub fn same_up_to_character(x: &FixedClass, y: &FixedClass) -> bool {
    if x.ell() != y.ell() || x.space() != y.space() || x.support() != y.support() {
        return false;
    }
    let mut ratio: Option<crate::qring::RationalScalar> = None;
    for ((_, _, u), (_, _, v)) in x.restrictions().zip(y.restrictions()) {
        if u.is_zero() != v.is_zero() {
            return false;
        }
        if u.is_zero() {
            continue;
        }
        let r = u.div(v);
        match &ratio {
            None => ratio = Some(r),
            Some(q) if *q == r => {}
            Some(_) => return false,
        }
    }
    ratio.and_then(|r| r.to_torus()).is_some_and(|t| t.as_unit().is_some_and(|(_, m)| m.q == 0))
}

/// Both lists agree as signed, `X`-periodic families.
pub fn same_family(xs: &[FixedClass], ys: &[FixedClass]) -> bool {
    xs.len() == ys.len()
        && xs.iter().all(|x| ys.iter().filter(|y| same_up_to_character(x, y)).count() == 1)
        && ys.iter().all(|y| xs.iter().filter(|x| same_up_to_character(x, y)).count() == 1)
}

/// Duals on **W**′: `b′_j = Σ_k C_{kj}u′_k` with `(b_i‖b′_j) = δ_{ij}`, where
/// `u′_k` is the filtration on **W**′ and `C = dagger(G⁻¹)`, `G_{ik} = (b_i‖u′_k)`.
pub fn dual_basis(block: &BlockSpace, primal: &[FixedClass]) -> Result<Vec<FixedClass>> {
    let ell = block.ell();
    let primes: Vec<FixedClass> = block.basis.iter().map(|u| u.clone().relabel(Space::Q)).collect();
    let g = primal
        .iter()
        .map(|b| primes.iter().map(|u| block.pair_dual(b, u)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let inv = linalg::inverse(&linalg::from_torus(&g), ell)
        .map_err(|_| QloopError::Consistency("the ( ‖ ) Gram matrix is singular".into()))?;
    let inv = linalg::to_torus(&inv, "inverse ( ‖ ) Gram matrix")
        .map_err(|e| QloopError::Consistency(format!("( ‖ ) is not perfect on the block: {e}")))?;
    Ok((0..primal.len())
        .map(|j| {
            let coords: Vec<TorusScalar> = (0..primes.len()).map(|k| inv[k][j].dagger()).collect();
            block.combine(&coords, Space::Q)
        })
        .collect())
}

/// Inverse of [`dual_basis`]: `b_i = Σ_k D_{ki}u_k` with `(b_i‖b′_j) = δ_{ij}`,
/// so `D = (H⁻¹)ᵀ` for `H_{kj} = (u_k‖b′_j)`.
pub fn primal_basis(block: &BlockSpace, duals: &[FixedClass]) -> Result<Vec<FixedClass>> {
    let ell = block.ell();
    let h = block
        .basis
        .iter()
        .map(|u| duals.iter().map(|d| block.pair_dual(u, d)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let inv = linalg::inverse(&linalg::from_torus(&h), ell)
        .map_err(|_| QloopError::Consistency("the ( ‖ ) Gram matrix is singular".into()))?;
    let inv = linalg::to_torus(&inv, "inverse ( ‖ ) Gram matrix")?;
    Ok((0..duals.len()).map(|i| block.combine(&inv[i], Space::F)).collect())
}

/// `(b′_i|b′_j)′` through both routes, as `q⁻¹`-series.
#[derive(Clone, Debug)]
pub struct PrimedGram {
    pub localized: Vec<Vec<TailSeries>>,
    pub exact: Vec<Vec<TailSeries>>,
}

impl PrimedGram {
    pub fn routes_agree(&self) -> bool {
        self.localized == self.exact
    }

    /// `(b′_i|b′_j)′ ∈ δ + q⁻¹ℤ[[q⁻¹]]` in every torus character.
    pub fn near_orthonormal(&self) -> bool {
        self.localized
            .iter()
            .enumerate()
            .all(|(i, r)| r.iter().enumerate().all(|(j, t)| near_delta(t.known_part(), i == j)))
    }
}

pub fn primed_gram(block: &BlockSpace, duals: &[FixedClass], trunc: i64) -> Result<PrimedGram> {
    let (m, book) = (block.model, &block.book);
    let mut localized = Vec::new();
    let mut exact = Vec::new();
    for x in duals {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for y in duals {
            a.push(m.single_bar_prime(book, x, y, trunc)?);
            b.push(m.single_bar_prime_exact(book, x, y, trunc)?);
        }
        localized.push(a);
        exact.push(b);
    }
    Ok(PrimedGram { localized, exact })
}
