//! The explicit ℓ ≤ 2 families and the JSON record of a computed basis.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::block::{BlockSpace, FilterSlot};
use super::signed::{dual_basis, non_negative_part, SolvedBasis};
use crate::error::{QloopError, Result};
use crate::grassk::{A1Model, FixedClass, Space, Subset};
use crate::qring::{BarLaurent, Mono, TorusScalar};

/// The tautological signed basis of **W** (`Space::F`) or of **W**′
/// (`Space::Q`) for ℓ ∈ {1, 2}.
pub fn tautological_basis(m: &A1Model, space: Space) -> Result<Vec<(String, FixedClass)>> {
    let ell = m.ell();
    let mono = |mo: Mono| TorusScalar::from_mono(ell, BigInt::from(1), mo);
    let w = |n: i64| mono(m.det_w().pow(n));
    let prime = if space == Space::Q { "'" } else { "" };
    match ell {
        1 => Ok(vec![
            (format!("1{prime}_10"), FixedClass::unit(1, 0, space)),
            (format!("W^-1 1{prime}_11"), FixedClass::unit(1, 1, space).scale_torus(&w(-1))),
        ]),
        2 => {
            let mid = |label: &str, f: &dyn Fn(Subset) -> TorusScalar| {
                (label.to_string(), FixedClass::on_component(2, space, 1, |s| &w(-2) * &f(s)))
            };
            let e = |s: Subset| mono(m.det_e(s));
            let third: (String, FixedClass) = match space {
                Space::F => mid("q^-1 W^-2 E^3 1_21", &|s| e(s).pow(3).mul_laurent(&BarLaurent::q_pow(-1))),
                Space::Q => mid("q^-1 W^-2 E'^2 Q' 1'_21", &|s| {
                    let q = m.restrict_taut("Q'", 1, s).expect("1-subset");
                    (&e(s).pow(2) * &q).mul_laurent(&BarLaurent::q_pow(-1))
                }),
            };
            let e_name = if space == Space::Q { "E'" } else { "E" };
            Ok(vec![
                (format!("1{prime}_20"), FixedClass::unit(2, 0, space)),
                mid(&format!("W^-2 {e_name}^2 1{prime}_21"), &|s| e(s).pow(2)),
                third,
                (format!("W^-2 1{prime}_22"), FixedClass::unit(2, 2, space).scale_torus(&w(-2))),
            ])
        }
        _ => Err(QloopError::Precondition(format!("no explicit family for ℓ = {ell}"))),
    }
}

/// One serialized Laurent polynomial: `(coefficient, q-exponent, z-exponents)`.
pub type TermRecord = (String, i64, Vec<i64>);

pub fn torus_to_record(t: &TorusScalar) -> Vec<TermRecord> {
    t.terms().map(|(m, c)| (c.to_string(), m.q, m.z.clone())).collect()
}

pub fn torus_from_record(rank: usize, r: &[TermRecord]) -> Result<TorusScalar> {
    let mut out = TorusScalar::zero(rank);
    for (c, q, z) in r {
        if z.len() != rank {
            return Err(QloopError::Invalid(format!("term with {} variables in rank {rank}", z.len())));
        }
        let c: BigInt = c.parse().map_err(|_| QloopError::Invalid(format!("bad coefficient {c}")))?;
        out.add_term(Mono { q: *q, z: z.clone() }, c);
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ElementRecord {
    pub label: String,
    /// Coordinates in the filtration basis.
    pub coords: Vec<Vec<TermRecord>>,
    /// Rendered restrictions.
    pub class: String,
    /// `(b|b)` modulo `q⁻¹`.
    pub norm_mod_q: String,
    /// Coordinates of the dual element on **W**′ in the primed filtration.
    pub dual_coords: Vec<Vec<TermRecord>>,
    pub dual: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BasisRecord {
    pub ell: usize,
    pub window: i64,
    pub filtration: Vec<FilterSlot>,
    pub elements: Vec<ElementRecord>,
}

impl BasisRecord {
    pub fn new(block: &BlockSpace, sol: &SolvedBasis) -> Result<Self> {
        let duals = dual_basis(block, &sol.classes())?;
        let elements = sol
            .elements
            .iter()
            .zip(&duals)
            .enumerate()
            .map(|(i, (e, d))| {
                let dual_coords = block.coordinates(&d.clone().relabel(Space::F))?;
                Ok(ElementRecord {
                    label: e.label.clone(),
                    coords: e.coords.iter().map(torus_to_record).collect(),
                    class: e.class.to_string(),
                    norm_mod_q: non_negative_part(&sol.gram[i][i]).to_string(),
                    dual_coords: dual_coords.iter().map(torus_to_record).collect(),
                    dual: d.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { ell: block.ell(), window: sol.window, filtration: block.slots.clone(), elements })
    }

    /// Rebuild the primal classes in `block`, which must use the recorded filtration.
    pub fn primal(&self, block: &BlockSpace) -> Result<Vec<(String, FixedClass)>> {
        self.rebuild(block, |e| &e.coords, Space::F)
    }

    pub fn duals(&self, block: &BlockSpace) -> Result<Vec<(String, FixedClass)>> {
        self.rebuild(block, |e| &e.dual_coords, Space::Q)
    }

    fn rebuild(
        &self,
        block: &BlockSpace,
        pick: impl Fn(&ElementRecord) -> &Vec<Vec<TermRecord>>,
        space: Space,
    ) -> Result<Vec<(String, FixedClass)>> {
        if block.slots != self.filtration {
            return Err(QloopError::Invalid("record filtration differs from the block".into()));
        }
        self.elements
            .iter()
            .map(|e| {
                let coords = pick(e)
                    .iter()
                    .map(|t| torus_from_record(self.ell, t))
                    .collect::<Result<Vec<_>>>()?;
                if coords.len() != block.dim() {
                    return Err(QloopError::Dimension(format!("{} coordinates for a block of rank {}", coords.len(), block.dim())));
                }
                Ok((e.label.clone(), block.combine(&coords, space)))
            })
            .collect()
    }
}
