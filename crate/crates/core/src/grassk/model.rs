//! Fixed-point data: characters, Euler classes and the localization weights
//! of the incidence correspondences.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use itertools::Itertools;
use num_bigint::BigInt;
use rayon::prelude::*;

use super::class::{FixedClass, Space};
use crate::error::{QloopError, Result};
use crate::qring::{Mono, RationalScalar, TorusScalar};
use crate::quadmaps::{QuadMaps, RankBook};
use crate::rootkit::CartanDatum;

/// A fixed point: bit `j` set iff `j ∈ S`.
pub type Subset = u32;

/// All `a`-subsets of `{0, …, ℓ−1}` in lexicographic order of their elements.
pub fn subsets(ell: usize, a: usize) -> Vec<Subset> {
    if a > ell {
        return Vec::new();
    }
    (0..ell)
        .combinations(a)
        .map(|c| c.into_iter().fold(0, |m, j| m | (1 << j)))
        .collect()
}

pub(crate) fn members(s: Subset, ell: usize) -> impl Iterator<Item = usize> {
    (0..ell).filter(move |j| s >> j & 1 == 1)
}

/// `{1,3}`-style label with 1-based indices.
pub fn render_subset(s: Subset) -> String {
    let v: Vec<String> = (0..32).filter(|j| s >> j & 1 == 1).map(|j| (j + 1).to_string()).collect();
    format!("{{{}}}", v.join(","))
}

fn size(s: Subset) -> usize {
    s.count_ones() as usize
}

/// Localization weight `num / Π den` of one correspondence term.
#[derive(Clone, Debug)]
pub(crate) struct Weight {
    pub num: TorusScalar,
    pub den: Vec<TorusScalar>,
}

/// The A₁ model for `λ = ℓω₁`.
pub struct A1Model {
    ell: usize,
    books: Vec<RankBook>,
    x_map: Vec<i64>,
    y_map: Vec<u8>,
    weights: RwLock<HashMap<(Space, Subset, Subset), Arc<Weight>>>,
}

impl A1Model {
    pub fn new(ell: usize) -> Result<Self> {
        if ell == 0 || ell > 8 {
            return Err(QloopError::Invalid(format!("ℓ = {ell} outside 1..=8")));
        }
        let datum = CartanDatum::parse("A1")?;
        let qm = QuadMaps::new(&datum, &[ell as i64])?;
        let books = (0..=ell).map(|a| qm.rank_books(&[a as i64], 0)).collect();
        let x_map = (0..=ell).map(|a| qm.x_integrated(&[a as i64])).collect::<Result<_>>()?;
        let y_map = (0..=ell).map(|a| qm.y_integrated(&[a as i64])).collect();
        Ok(Self { ell, books, x_map, y_map, weights: RwLock::new(HashMap::new()) })
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// Rank data of component `a` (ranks of 𝓕, 𝓕±, 𝒱, the signs r±, t, d).
    pub fn book(&self, a: usize) -> &RankBook {
        &self.books[a]
    }

    /// Values `x(aα₁)` of the quadratic map.
    pub fn x_value(&self, a: usize) -> i64 {
        self.x_map[a]
    }

    /// Values `y(aα₁)` of the parity map.
    pub fn y_value(&self, a: usize) -> u8 {
        self.y_map[a]
    }

    pub fn subsets(&self, a: usize) -> Vec<Subset> {
        subsets(self.ell, a)
    }

    /// Complement `S^c` of a fixed point.
    pub fn complement(&self, s: Subset) -> Subset {
        !s & ((1 << self.ell) - 1)
    }

    /// Dimension of `Gr(a, ℓ)`; the cotangent bundle has twice this.
    pub fn dim_f(&self, a: usize) -> i64 {
        (a * (self.ell - a)) as i64
    }

    pub fn one(&self) -> Mono {
        Mono::one(self.ell)
    }

    pub fn z(&self, j: usize) -> Mono {
        let mut m = self.one();
        m.z[j] = 1;
        m
    }

    pub fn q(&self, e: i64) -> Mono {
        Mono { q: e, z: vec![0; self.ell] }
    }

    /// `⋀ℰ′|_S = Π_{s∈S} z_s`.
    pub fn det_e(&self, s: Subset) -> Mono {
        members(s, self.ell).fold(self.one(), |m, j| m.mul(&self.z(j)))
    }

    /// `⋀𝒱|_S = q^{|S|} Π_{s∈S} z_s`.
    pub fn det_v(&self, s: Subset) -> Mono {
        self.det_e(s).mul(&self.q(size(s) as i64))
    }

    /// `⋀𝒲 = Π_j z_j`.
    pub fn det_w(&self) -> Mono {
        self.det_e((1 << self.ell) - 1)
    }

    /// Tangent characters of `Gr(a, ℓ)` at `S`: `z_j/z_s`.
    pub fn tangent_f(&self, s: Subset) -> Vec<Mono> {
        self.hom_chars(s, s, 0)
    }

    /// Cotangent-fibre characters at `S`: `q²z_s/z_j`.
    pub fn fiber(&self, s: Subset) -> Vec<Mono> {
        self.hom_chars(s, s, 0).into_iter().map(|m| m.inv().mul(&self.q(2))).collect()
    }

    /// `q^{qe}·z_j/z_s` for `s ∈ small`, `j ∉ big`.
    fn hom_chars(&self, small: Subset, big: Subset, qe: i64) -> Vec<Mono> {
        let mut out = Vec::new();
        for s in members(small, self.ell) {
            for j in (0..self.ell).filter(|j| big >> j & 1 == 0) {
                out.push(self.z(j).div(&self.z(s)).mul(&self.q(qe)));
            }
        }
        out
    }

    /// Tangent characters of the incidence variety `{small ⊂ big}`: both
    /// Grassmannian tangent spaces minus `Hom(V, W/V′)`, plus the fibre
    /// directions `q²z_s/z_j` (`s ∈ small`, `j ∉ big`).
    pub fn tangent_pair(&self, small: Subset, big: Subset) -> Vec<Mono> {
        debug_assert_eq!(small & big, small);
        let mut t = self.tangent_f(small);
        t.extend(self.tangent_f(big));
        for w in self.hom_chars(small, big, 0) {
            let i = t.iter().position(|x| *x == w).expect("flag condition character");
            t.swap_remove(i);
        }
        t.extend(self.hom_chars(small, big, 0).into_iter().map(|m| m.inv().mul(&self.q(2))));
        t
    }

    /// `1 − w⁻¹`.
    pub fn euler_factor(&self, w: &Mono) -> TorusScalar {
        &TorusScalar::one(self.ell) - &TorusScalar::from_mono(self.ell, BigInt::from(1), w.inv())
    }

    pub fn euler(&self, chars: &[Mono]) -> TorusScalar {
        chars.iter().fold(TorusScalar::one(self.ell), |acc, w| &acc * &self.euler_factor(w))
    }

    /// Euler class of the tangent space of `Gr` at `S`.
    pub fn e_f(&self, s: Subset) -> TorusScalar {
        self.euler(&self.tangent_f(s))
    }

    /// Euler class of the conormal directions of `F ⊂ Q` at `S`.
    pub fn e_n(&self, s: Subset) -> TorusScalar {
        self.euler(&self.fiber(s))
    }

    pub fn e_q(&self, s: Subset) -> TorusScalar {
        &self.e_f(s) * &self.e_n(s)
    }

    /// Canonical class of `Gr` at `S`: `Π z_s/z_j`.
    pub fn omega_f(&self, s: Subset) -> Mono {
        self.tangent_f(s).iter().fold(self.one(), |m, w| m.div(w))
    }

    /// Weight of the term `src → dst` of a convolution: on Q it is
    /// `e_Q(dst)/e_Z`, on F it is `e_F(dst)·e_N(src)/e_Z`.
    pub(crate) fn weight(&self, space: Space, dst: Subset, src: Subset) -> Arc<Weight> {
        let key = (space, dst, src);
        if let Some(w) = self.weights.read().unwrap().get(&key) {
            return w.clone();
        }
        let (small, big) = if size(dst) < size(src) { (dst, src) } else { (src, dst) };
        let mut num = self.tangent_f(dst);
        match space {
            Space::Q => num.extend(self.fiber(dst)),
            Space::F => num.extend(self.fiber(src)),
        }
        let mut den = self.tangent_pair(small, big);
        num.retain(|w| match den.iter().position(|x| x == w) {
            Some(i) => {
                den.swap_remove(i);
                false
            }
            None => true,
        });
        let w = Arc::new(Weight {
            num: self.euler(&num),
            den: den.iter().map(|w| self.euler_factor(w)).collect(),
        });
        self.weights.write().unwrap().insert(key, w.clone());
        w
    }

    /// Convolution with a monomial kernel `K(dst, src)` along the incidence
    /// correspondences between components `src_a` and `dst_a`.
    pub(crate) fn convolve(
        &self,
        y: &FixedClass,
        src_a: usize,
        dst_a: usize,
        kernel: &(dyn Fn(Subset, Subset) -> TorusScalar + Sync),
    ) -> Vec<RationalScalar> {
        let src = self.subsets(src_a);
        let vals = y.component(src_a);
        self.subsets(dst_a)
            .par_iter()
            .map(|&d| {
                let mut acc = RationalScalar::zero(self.ell);
                for (&s, v) in src.iter().zip(vals) {
                    let related = if src_a > dst_a { d & s == d } else { d & s == s };
                    if !related || v.is_zero() {
                        continue;
                    }
                    let w = self.weight(y.space(), d, s);
                    let mut t = v.mul_torus(&(&kernel(d, s) * &w.num));
                    for f in &w.den {
                        t = t.div_torus(f);
                    }
                    acc = &acc + &t;
                }
                acc
            })
            .collect()
    }

    /// Restriction of a tautological class at the fixed point `S`.
    ///
    /// Ids: `E'`, `E` (ℰ′ and its restriction ℰ), `V`, `W`, `Q'`, `Q`,
    /// `F`, `F+`, `F-`, and `det:<id>` for top wedges.
    pub fn restrict_taut(&self, name: &str, a: usize, s: Subset) -> Result<TorusScalar> {
        if size(s) != a || a > self.ell {
            return Err(QloopError::Invalid(format!("{} is not a {a}-subset", render_subset(s))));
        }
        if let Some(inner) = name.strip_prefix("det:") {
            let (plus, minus) = self.taut_chars(inner, s)?;
            let m = plus.iter().fold(self.one(), |m, w| m.mul(w));
            let m = minus.iter().fold(m, |m, w| m.div(w));
            return Ok(TorusScalar::from_mono(self.ell, BigInt::from(1), m));
        }
        let (plus, minus) = self.taut_chars(name, s)?;
        let mono = |w: &Mono| TorusScalar::from_mono(self.ell, BigInt::from(1), w.clone());
        let mut out = TorusScalar::zero(self.ell);
        for w in &plus {
            out += &mono(w);
        }
        for w in &minus {
            out -= &mono(w);
        }
        Ok(out)
    }

    /// Characters of a tautological (virtual) bundle: `(plus, minus)`.
    pub fn taut_chars(&self, name: &str, s: Subset) -> Result<(Vec<Mono>, Vec<Mono>)> {
        let inside: Vec<Mono> = members(s, self.ell).map(|j| self.z(j)).collect();
        let outside: Vec<Mono> =
            (0..self.ell).filter(|j| s >> j & 1 == 0).map(|j| self.z(j)).collect();
        let all: Vec<Mono> = (0..self.ell).map(|j| self.z(j)).collect();
        let tw = |v: &[Mono], e: i64| v.iter().map(|m| m.mul(&self.q(e))).collect::<Vec<_>>();
        Ok(match name {
            "E'" | "E" => (inside, vec![]),
            "V" => (tw(&inside, 1), vec![]),
            "W" => (all, vec![]),
            "Q'" | "Q" => (outside, vec![]),
            // 𝓕⁺ = q⁻¹𝒲 − q⁻²𝒱, 𝓕⁻ = −𝒱, 𝓕 = 𝓕⁺ + 𝓕⁻ (after cancellation)
            "F+" => (tw(&all, -1), tw(&inside, -1)),
            "F-" => (vec![], tw(&inside, 1)),
            "F" => (tw(&outside, -1), tw(&inside, 1)),
            _ => return Err(QloopError::Invalid(format!("unknown tautological class {name}"))),
        })
    }
}
