//! Integer books attached to a dominant weight: ranks of the tautological
//! bundles, the increments `g`, `h`, and the quadratic maps `x: Q → ℤ`,
//! `y: Q → ℤ/2` they integrate to.

use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{QloopError, Result};
use crate::rootkit::{CartanDatum, LatticeVec, RootVec, WeightVec};

/// An orientation `Ω` of the doubled Dynkin quiver: `n[i][j]` arrows from `i`
/// to `j` in `Ω`, `nbar[i][j]` in the opposite set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrientationData {
    pub n: Vec<Vec<i64>>,
    pub nbar: Vec<Vec<i64>>,
}

impl OrientationData {
    /// Arrow counts add up to `2δᵢⱼ − aᵢⱼ` and `n̄ᵢⱼ = nⱼᵢ`.
    pub fn is_consistent(&self, d: &CartanDatum) -> bool {
        let r = d.rank();
        (0..r).all(|i| {
            (0..r).all(|j| {
                self.n[i][j] + self.nbar[i][j] == 2 * i64::from(i == j) - d.a(i, j)
                    && self.nbar[i][j] == self.n[j][i]
            })
        })
    }

    /// `nᵢⱼ = n_{īj̄}` if `c` is even, `nᵢⱼ = n̄_{īj̄}` if `c` is odd.
    pub fn satisfies_convention(&self, d: &CartanDatum) -> bool {
        let r = d.rank();
        let odd = d.coxeter_number() % 2 != 0;
        (0..r).all(|i| {
            (0..r).all(|j| {
                let (ib, jb) = (d.bar_index(i), d.bar_index(j));
                let other = if odd { self.nbar[ib][jb] } else { self.n[ib][jb] };
                self.n[i][j] == other
            })
        })
    }
}

/// The first orientation, in the order of bitmasks over lexicographically
/// ordered edges (bit clear: arrow from the smaller index), that satisfies
/// the parity convention.
pub fn choose_orientation(d: &CartanDatum) -> Result<OrientationData> {
    let r = d.rank();
    let edges: Vec<(usize, usize)> = (0..r)
        .flat_map(|i| (i + 1..r).map(move |j| (i, j)))
        .filter(|&(i, j)| d.a(i, j) != 0)
        .collect();
    for mask in 0u64..(1u64 << edges.len()) {
        let mut n = vec![vec![0i64; r]; r];
        for (k, &(i, j)) in edges.iter().enumerate() {
            if mask >> k & 1 == 0 {
                n[i][j] = 1;
            } else {
                n[j][i] = 1;
            }
        }
        let nbar = (0..r).map(|i| (0..r).map(|j| n[j][i]).collect()).collect();
        let o = OrientationData { n, nbar };
        if o.satisfies_convention(d) {
            return Ok(o);
        }
    }
    Err(QloopError::Consistency(format!(
        "no orientation of {} satisfies the parity convention",
        d.label()
    )))
}

/// Ranks and dimensions at `(λ, α, i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankBook {
    pub f: i64,
    pub f_plus: i64,
    pub f_minus: i64,
    pub v: i64,
    pub r_plus: i64,
    pub r_minus: i64,
    pub t: i64,
    pub d: i64,
}

/// Coefficients of `x(α) = Σ qᵢⱼaᵢaⱼ + Σ bᵢaᵢ + a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadMapCoeffs {
    pub qform: Vec<Vec<Rational64>>,
    pub linear: Vec<i64>,
    pub constant: i64,
}

impl QuadMapCoeffs {
    pub fn eval(&self, alpha: &[i64]) -> Result<i64> {
        let mut s = Rational64::from(self.constant);
        for (i, &ai) in alpha.iter().enumerate() {
            s += Rational64::from(self.linear[i] * ai);
            for (j, &aj) in alpha.iter().enumerate() {
                s += self.qform[i][j] * Rational64::from(ai * aj);
            }
        }
        if s.is_integer() {
            Ok(s.to_integer())
        } else {
            Err(QloopError::Integrality(format!("x({alpha:?}) = {s} is not an integer")))
        }
    }
}

/// Coefficients of `y(α) = Σ_{i<j} pᵢⱼaᵢaⱼ + Σ uᵢaᵢ + e` over `ℤ/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityMapCoeffs {
    pub pair: Vec<Vec<u8>>,
    pub linear: Vec<u8>,
    pub constant: u8,
}

impl ParityMapCoeffs {
    pub fn eval(&self, alpha: &[i64]) -> u8 {
        let mut s = i64::from(self.constant);
        for (i, &ai) in alpha.iter().enumerate() {
            s += i64::from(self.linear[i]) * ai;
            for (j, &aj) in alpha.iter().enumerate().skip(i + 1) {
                s += i64::from(self.pair[i][j]) * ai * aj;
            }
        }
        s.rem_euclid(2) as u8
    }
}

/// Books attached to a datum, a dominant weight and the chosen orientation.
#[derive(Clone, Debug)]
pub struct QuadMaps<'a> {
    pub datum: &'a CartanDatum,
    pub orientation: OrientationData,
    pub lambda: WeightVec,
    /// `ν = λ − w₀(λ)` in root coordinates.
    pub nu: RootVec,
    pub c: i64,
}

impl<'a> QuadMaps<'a> {
    pub fn new(datum: &'a CartanDatum, lambda: &[i64]) -> Result<Self> {
        if lambda.len() != datum.rank() {
            return Err(QloopError::Dimension(format!(
                "weight of length {} for rank {}",
                lambda.len(),
                datum.rank()
            )));
        }
        if lambda.iter().any(|&l| l < 0) {
            return Err(QloopError::Invalid(format!("weight {lambda:?} is not dominant")));
        }
        let orientation = choose_orientation(datum)?;
        let zero = vec![0; datum.rank()];
        let nu = datum.w_star(datum.longest_element(), &zero, lambda);
        Ok(QuadMaps {
            datum,
            orientation,
            lambda: lambda.to_vec(),
            nu,
            c: datum.coxeter_number(),
        })
    }

    pub fn w0_star(&self, alpha: &[i64]) -> RootVec {
        self.datum.w_star(self.datum.longest_element(), alpha, &self.lambda)
    }

    /// `d_{λα} = (α, 2λ − α)`.
    pub fn dim(&self, alpha: &[i64]) -> i64 {
        2 * self.datum.pair_wr(&self.lambda, alpha) - self.datum.pair_rr(alpha, alpha)
    }

    /// Dimension of the incidence variety between `α` and `α'`:
    /// `(d_{λα} + d_{λα'})/2`.
    pub fn dim_pair(&self, alpha: &[i64], alpha2: &[i64]) -> i64 {
        (self.dim(alpha) + self.dim(alpha2)) / 2
    }

    pub fn rank_books(&self, alpha: &[i64], i: usize) -> RankBook {
        let d = self.datum;
        let n = &self.orientation;
        let ai = d.simple_root(i);
        let f = self.lambda[i] - d.pair_rr(&ai, alpha);
        let v = alpha[i];
        let f_minus = -v;
        let twisted = |m: &Vec<Vec<i64>>| -> i64 {
            alpha[i] - (0..d.rank()).map(|j| m[i][j] * alpha[j]).sum::<i64>()
        };
        let dim = self.dim(alpha);
        RankBook {
            f,
            f_plus: f - f_minus,
            f_minus,
            v,
            r_plus: self.lambda[i] - twisted(&n.n),
            r_minus: -twisted(&n.nbar),
            t: dim / 2 + d.norm2(alpha),
            d: dim,
        }
    }

    /// `g_{i;α} = −1 + (c−1)f⁺_{ī;w₀∗α} + f⁺_{i;α} − c·f⁻_{ī;w₀∗α}`.
    pub fn g(&self, i: usize, alpha: &[i64]) -> i64 {
        let ib = self.datum.bar_index(i);
        let b = self.w0_star(alpha);
        let star = self.rank_books(&b, ib);
        let here = self.rank_books(alpha, i);
        -1 + (self.c - 1) * star.f_plus + here.f_plus - self.c * star.f_minus
    }

    /// `h_{i;α} = r⁺_{ī;w₀∗α} + d_{λ,w₀∗α−α_ī,w₀∗α} + r⁻_{i;α}` mod 2.
    pub fn h(&self, i: usize, alpha: &[i64]) -> u8 {
        let ib = self.datum.bar_index(i);
        let b = self.w0_star(alpha);
        let mut b_low = b.clone();
        b_low[ib] -= 1;
        let v = self.rank_books(&b, ib).r_plus + self.dim_pair(&b_low, &b) + self.rank_books(alpha, i).r_minus;
        v.rem_euclid(2) as u8
    }

    pub fn g_and_h(&self, i: usize, alpha: &[i64]) -> (i64, u8) {
        (self.g(i, alpha), self.h(i, alpha))
    }

    /// Both cocycle identities at `α` for the pair `(i, j)`.
    pub fn cocycle_holds(&self, i: usize, j: usize, alpha: &[i64]) -> bool {
        let plus = |k: usize| {
            let mut a = alpha.to_vec();
            a[k] += 1;
            a
        };
        let (ai, aj) = (plus(i), plus(j));
        let g_ok = self.g(i, &aj) + self.g(j, alpha) == self.g(j, &ai) + self.g(i, alpha);
        let h_ok = (self.h(i, &aj) + self.h(j, alpha)) % 2 == (self.h(j, &ai) + self.h(i, alpha)) % 2;
        g_ok && h_ok
    }

    /// `(λ, λ)` as an exact rational.
    fn lambda_norm(&self) -> Rational64 {
        let l = LatticeVec::Weight(self.lambda.clone());
        self.datum.pairing(&l, &l).expect("lengths checked at construction")
    }

    /// `x(ν) = (c−1)|ν|² − c(λ, λ)`.
    pub fn x_at_nu(&self) -> Result<i64> {
        let v = Rational64::from((self.c - 1) * self.datum.norm2(&self.nu))
            - Rational64::from(self.c) * self.lambda_norm();
        if v.is_integer() {
            Ok(v.to_integer())
        } else {
            Err(QloopError::Integrality(format!("x(ν) = {v} is not an integer")))
        }
    }

    /// Closed-form coefficients: `qᵢⱼ = (1 − c/2)aᵢⱼ + δᵢⱼ(c − 1)`,
    /// `bᵢ = (c − 2)ℓᵢ + (1 − c)kᵢ`, `a = x(ν)`.
    pub fn solve_x(&self) -> Result<QuadMapCoeffs> {
        let r = self.datum.rank();
        let c = self.c;
        let half = Rational64::new(2 - c, 2);
        let qform = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| half * Rational64::from(self.datum.a(i, j)) + Rational64::from(i64::from(i == j) * (c - 1)))
                    .collect()
            })
            .collect();
        let linear = (0..r)
            .map(|i| (c - 2) * self.lambda[i] + (1 - c) * self.nu[i])
            .collect();
        Ok(QuadMapCoeffs { qform, linear, constant: self.x_at_nu()? })
    }

    /// `x(α)` by integrating `x(α + αᵢ) − x(α) = c·v_{i;ν} − g_{i;α}` from `ν`.
    pub fn x_integrated(&self, alpha: &[i64]) -> Result<i64> {
        let mut cur = self.nu.clone();
        let mut x = self.x_at_nu()?;
        for i in 0..self.datum.rank() {
            while cur[i] < alpha[i] {
                x += self.c * self.nu[i] - self.g(i, &cur);
                cur[i] += 1;
            }
            while cur[i] > alpha[i] {
                cur[i] -= 1;
                x -= self.c * self.nu[i] - self.g(i, &cur);
            }
        }
        Ok(x)
    }

    /// Parity coefficients fitted to the increments `h` (which are affine in
    /// `α` mod 2) and normalized by `y(ν) = 0`.
    pub fn solve_y(&self) -> Result<ParityMapCoeffs> {
        let r = self.datum.rank();
        let zero = vec![0; r];
        let base: Vec<u8> = (0..r).map(|i| self.h(i, &zero)).collect();
        let mut pair = vec![vec![0u8; r]; r];
        for i in 0..r {
            for j in 0..r {
                let mut e = zero.clone();
                e[j] = 1;
                let coef = (self.h(i, &e) + base[i]) % 2;
                if i == j && coef != 0 {
                    return Err(QloopError::Consistency(format!(
                        "increment h_{} is not affine with vanishing diagonal",
                        i + 1
                    )));
                }
                pair[i][j] = coef;
            }
        }
        if (0..r).any(|i| (0..r).any(|j| pair[i][j] != pair[j][i])) {
            return Err(QloopError::Consistency("parity increments are not symmetric".into()));
        }
        let mut p = ParityMapCoeffs { pair, linear: base, constant: 0 };
        p.constant = p.eval(&self.nu);
        Ok(p)
    }

    /// `y(α)` by integrating `y(α + αᵢ) − y(α) = h_{i;α}` from `y(ν) = 0`.
    pub fn y_integrated(&self, alpha: &[i64]) -> u8 {
        let mut cur = self.nu.clone();
        let mut y = 0u8;
        for i in 0..self.datum.rank() {
            while cur[i] < alpha[i] {
                y ^= self.h(i, &cur);
                cur[i] += 1;
            }
            while cur[i] > alpha[i] {
                cur[i] -= 1;
                y ^= self.h(i, &cur);
            }
        }
        y
    }

    /// Seeded sample of root-lattice vectors with coordinates in `[-bound, bound]`.
    pub fn sample_alphas(&self, seed: u64, count: usize, bound: i64) -> Vec<RootVec> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count)
            .map(|_| (0..self.datum.rank()).map(|_| rng.gen_range(-bound..=bound)).collect())
            .collect()
    }

    /// Checks on each sample: both cocycle identities for all `i, j`.
    pub fn cocycle_check(&self, samples: &[RootVec]) -> bool {
        let r = self.datum.rank();
        samples
            .iter()
            .all(|a| (0..r).all(|i| (0..r).all(|j| self.cocycle_holds(i, j, a))))
    }

    /// Checks on each sample that the closed forms match the integrated maps.
    pub fn closed_form_check(&self, samples: &[RootVec]) -> Result<bool> {
        let x = self.solve_x()?;
        let y = self.solve_y()?;
        for a in samples {
            if x.eval(a)? != self.x_integrated(a)? || y.eval(a) != self.y_integrated(a) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Checks `x(w₀∗α) = x(α)` and `y(w₀∗α) = y(α)` on each sample.
    pub fn appendix_check(&self, samples: &[RootVec]) -> Result<bool> {
        let x = self.solve_x()?;
        let y = self.solve_y()?;
        for a in samples {
            let b = self.w0_star(a);
            if x.eval(&b)? != x.eval(a)? || y.eval(&b) != y.eval(a) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `ξ(α) = q^{x(α)}` exponent and `ϱ(α) = (−1)^{y(α)}` sign.
    pub fn xi_rho(&self, alpha: &[i64]) -> Result<(i64, i64)> {
        let x = self.solve_x()?.eval(alpha)?;
        let y = self.solve_y()?.eval(alpha);
        Ok((x, if y == 0 { 1 } else { -1 }))
    }
}

/// Random dominant weight with entries in `0..=max`.
pub fn random_dominant(d: &CartanDatum, seed: u64, max: i64) -> WeightVec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..d.rank()).map(|_| rng.gen_range(0..=max)).collect()
}
