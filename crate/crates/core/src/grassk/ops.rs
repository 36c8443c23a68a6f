//! Drinfeld operators as convolutions, and the diagonal Cartan series.

use num_bigint::BigInt;

use super::class::FixedClass;
use super::model::{A1Model, Subset};
use crate::error::{QloopError, Result};
use crate::qring::{qfact, sign_pow, Mono, RationalScalar, TorusScalar};

/// Operators of the model. `x⁺` maps component `a+1` to `a`; `x⁻` maps
/// `a−1` to `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    XPlus(i64),
    XMinus(i64),
    /// `⋀ℰ′^{−ℓ} x⁺_r ⋀𝒲^{−ℓ} ⋀ℰ′^{ℓ}`, with its own closed-form kernel.
    XtPlus(i64),
    /// `⋀ℰ′^{−ℓ} x⁻_r ⋀𝒲^{ℓ} ⋀ℰ′^{ℓ}`, with its own closed-form kernel.
    XtMinus(i64),
    /// `k⁺_n`, `n ≥ 0`.
    KPlus(i64),
    /// `k⁻_n`, `n ≤ 0`.
    KMinus(i64),
    /// `k^n`.
    K(i64),
    /// `h_s`, `s ≠ 0`.
    H(i64),
    /// `p_s`: coefficients of `exp(Σ h_{±s}/[s] z^s)`.
    P(i64),
    /// `(x⁺_0)^{(n)}` through the single correspondence `a+n → a`.
    EDiv(u32),
    /// `(x⁻_0)^{(n)}` through the single correspondence `a−n → a`.
    FDiv(u32),
}

fn unit(ell: usize, sign: i64, m: Mono) -> TorusScalar {
    TorusScalar::from_mono(ell, BigInt::from(sign), m)
}

/// Truncated power series in one variable with torus coefficients.
fn series_mul(a: &[TorusScalar], b: &[TorusScalar]) -> Vec<TorusScalar> {
    let n = a.len();
    let rank = a[0].rank();
    (0..n)
        .map(|k| {
            let mut s = TorusScalar::zero(rank);
            for i in 0..=k {
                s += &(&a[i] * &b[k - i]);
            }
            s
        })
        .collect()
}

impl A1Model {
    /// Apply an operator.
    pub fn act(&self, op: &Op, c: &FixedClass) -> Result<FixedClass> {
        if c.ell() != self.ell() {
            return Err(QloopError::Dimension(format!(
                "class for ℓ = {} on the ℓ = {} model",
                c.ell(),
                self.ell()
            )));
        }
        let ell = self.ell();
        let mut comps = vec![Vec::new(); ell + 1];
        for (a, slot) in comps.iter_mut().enumerate() {
            *slot = vec![RationalScalar::zero(ell); self.subsets(a).len()];
        }
        match *op {
            Op::KPlus(_) | Op::KMinus(_) | Op::K(_) | Op::H(_) | Op::P(_) => {
                for a in c.support() {
                    for (i, s) in self.subsets(a).into_iter().enumerate() {
                        let ev = self.eigenvalue(op, s)?;
                        comps[a][i] = c.component(a)[i].mul_torus(&ev);
                    }
                }
            }
            _ => {
                let (shift, n) = match *op {
                    Op::XPlus(_) | Op::XtPlus(_) => (1, 1),
                    Op::XMinus(_) | Op::XtMinus(_) => (-1, 1),
                    Op::EDiv(n) => (1, n as i64),
                    Op::FDiv(n) => (-1, n as i64),
                    _ => unreachable!(),
                };
                if n == 0 {
                    return Ok(c.clone());
                }
                for src in c.support() {
                    let dst = src as i64 - shift * n;
                    if dst < 0 || dst > ell as i64 {
                        continue;
                    }
                    let dst = dst as usize;
                    let k = |d: Subset, s: Subset| self.kernel(op, src, dst, d, s);
                    comps[dst] = self.convolve(c, src, dst, &k);
                }
            }
        }
        Ok(FixedClass::from_parts(ell, c.space(), comps))
    }

    /// Apply a word of operators, rightmost first.
    pub fn act_word(&self, word: &[Op], c: &FixedClass) -> Result<FixedClass> {
        word.iter().rev().try_fold(c.clone(), |v, op| self.act(op, &v))
    }

    /// Monomial kernel at `(dst, src)` on components `dst_a ← src_a`.
    fn kernel(&self, op: &Op, src_a: usize, dst_a: usize, d: Subset, s: Subset) -> TorusScalar {
        let ell = self.ell() as i64;
        let (ap, a) = (src_a as i64, dst_a as i64);
        let vd = self.det_v(d);
        let vs = self.det_v(s);
        let w = self.det_w();
        let n = self.ell();
        match *op {
            Op::XtPlus(r) => unit(
                n,
                sign_pow(ell - ap),
                self.q(-2 * r - ap).mul(&vd.pow(-r - ell + ap)).mul(&vs.pow(r + ell - a)).div(&w),
            ),
            Op::XtMinus(r) => unit(
                n,
                sign_pow(ap),
                self.q(-2 * r + ap).mul(&vd.pow(r - ap)).mul(&vs.pow(-r + a)),
            ),
            Op::XPlus(r) => {
                let (bs, bd) = (self.book(src_a), self.book(dst_a));
                // (q⁻¹⋀𝒱⁻¹ ⊠ ⋀𝒱)^{r+f⁻} ⊗ p′*⋀𝓕⁺⁻¹ ⊗ ⋀𝒲^{t′−t}
                let base = self.q(-1).mul(&vd.inv()).mul(&vs);
                let m = self
                    .q(-r)
                    .mul(&base.pow(r + bs.f_minus))
                    .mul(&self.det_fplus(s).inv())
                    .mul(&w.pow(bs.t - bd.t));
                unit(n, sign_pow(bs.r_plus), m)
            }
            Op::XMinus(r) => {
                let (bs, bd) = (self.book(src_a), self.book(dst_a));
                // (q⁻¹⋀𝒱 ⊠ ⋀𝒱⁻¹)^{r+f⁺} ⊗ p′*⋀𝓕⁻⁻¹ ⊗ ⋀𝒲^{t′−t}
                let base = self.q(-1).mul(&vd).mul(&vs.inv());
                let m = self
                    .q(-r)
                    .mul(&base.pow(r + bs.f_plus))
                    .mul(&self.det_fminus(s).inv())
                    .mul(&w.pow(bs.t - bd.t));
                unit(n, sign_pow(bs.r_minus), m)
            }
            Op::EDiv(k) => {
                let k = k as i64;
                let (bs, bd) = (self.book(src_a), self.book(dst_a));
                let base = self.q(-k).mul(&vd.inv()).mul(&vs);
                let m = base
                    .pow(bs.f_minus)
                    .mul(&self.det_fplus(s).pow(-k))
                    .mul(&w.pow(bs.t - bd.t));
                unit(n, self.divided_power_sign(true, k, src_a), m)
            }
            Op::FDiv(k) => {
                let k = k as i64;
                let (bs, bd) = (self.book(src_a), self.book(dst_a));
                let base = self.q(-k).mul(&vd).mul(&vs.inv());
                let m = base
                    .pow(bs.f_plus)
                    .mul(&self.det_fminus(s).pow(-k))
                    .mul(&w.pow(bs.t - bd.t));
                unit(n, self.divided_power_sign(false, k, src_a), m)
            }
            _ => unreachable!("diagonal operator has no kernel"),
        }
    }

    /// Sign of the closed-form divided powers: `(−1)^{n·r^±}` at the source.
    fn divided_power_sign(&self, plus: bool, n: i64, src_a: usize) -> i64 {
        let b = self.book(src_a);
        sign_pow(n * if plus { b.r_plus } else { b.r_minus })
    }

    /// `⋀𝓕⁺|_S` with `𝓕⁺ = q⁻¹𝒲 − q⁻²𝒱`.
    pub fn det_fplus(&self, s: Subset) -> Mono {
        let a = s.count_ones() as i64;
        self.q(-(self.ell() as i64)).mul(&self.det_w()).div(&self.q(-2 * a).mul(&self.det_v(s)))
    }

    /// `⋀𝓕⁻|_S` with `𝓕⁻ = −𝒱`.
    pub fn det_fminus(&self, s: Subset) -> Mono {
        self.det_v(s).inv()
    }

    /// Factors `(A, B)` with `k(u)|_S = q^f Π (1 − A/u)/(1 − B/u)`, read off
    /// from the characters of 𝓕: `(q⁻²w, w)` for `w ∈ 𝓕`, `(w, q⁻²w)` for
    /// `−w ∈ 𝓕`.
    pub fn k_factors(&self, s: Subset) -> (i64, Vec<(Mono, Mono)>) {
        let (plus, minus) = self.taut_chars("F", s).expect("F is a tautological class");
        let f = plus.len() as i64 - minus.len() as i64;
        let mut out: Vec<(Mono, Mono)> = plus.iter().map(|w| (w.mul(&self.q(-2)), w.clone())).collect();
        out.extend(minus.iter().map(|w| (w.clone(), w.mul(&self.q(-2)))));
        (f, out)
    }

    /// Coefficients `k⁺_0, …, k⁺_N` at `S` (expansion at `u = ∞`).
    pub fn k_plus_series(&self, s: Subset, order: usize) -> Vec<TorusScalar> {
        let n = self.ell();
        let (f, facs) = self.k_factors(s);
        let mut acc = vec![TorusScalar::zero(n); order + 1];
        acc[0] = unit(n, 1, self.q(f));
        for (a, b) in facs {
            // (1 − A/u)/(1 − B/u) = 1 + Σ_{m≥1} (B^m − A B^{m−1}) u^{−m}
            let mut ser = vec![TorusScalar::one(n)];
            for m in 1..=order as i64 {
                ser.push(&unit(n, 1, b.pow(m)) - &unit(n, 1, a.mul(&b.pow(m - 1))));
            }
            acc = series_mul(&acc, &ser);
        }
        acc
    }

    /// Coefficients `k⁻_0, k⁻_{−1}, …, k⁻_{−N}` at `S` (expansion at `u = 0`).
    pub fn k_minus_series(&self, s: Subset, order: usize) -> Vec<TorusScalar> {
        let n = self.ell();
        let (f, facs) = self.k_factors(s);
        let mut lead = self.q(f);
        let mut acc = vec![TorusScalar::zero(n); order + 1];
        acc[0] = TorusScalar::one(n);
        for (a, b) in facs {
            lead = lead.mul(&a).div(&b);
            // (1 − u/A)/(1 − u/B) = 1 + Σ_{m≥1} (B^{−m} − A^{−1}B^{1−m}) u^m
            let mut ser = vec![TorusScalar::one(n)];
            for m in 1..=order as i64 {
                ser.push(&unit(n, 1, b.pow(-m)) - &unit(n, 1, a.inv().mul(&b.pow(1 - m))));
            }
            acc = series_mul(&acc, &ser);
        }
        acc.into_iter().map(|c| c.mul_mono(&lead)).collect()
    }

    /// Eigenvalue of a diagonal operator at the fixed point `S`.
    pub fn eigenvalue(&self, op: &Op, s: Subset) -> Result<TorusScalar> {
        let n = self.ell();
        let (f, facs) = self.k_factors(s);
        Ok(match *op {
            Op::K(p) => unit(n, 1, self.q(f * p)),
            Op::KPlus(r) if r >= 0 => self.k_plus_series(s, r as usize)[r as usize].clone(),
            Op::KMinus(r) if r <= 0 => self.k_minus_series(s, (-r) as usize)[(-r) as usize].clone(),
            Op::KPlus(_) | Op::KMinus(_) => TorusScalar::zero(n),
            Op::H(t) if t != 0 => {
                // log k^±(u) = Σ (B^{±t} − A^{±t})/t · u^{∓t}
                let mut num = TorusScalar::zero(n);
                for (a, b) in &facs {
                    num += &(&unit(n, 1, b.pow(t.abs() * t.signum()))
                        - &unit(n, 1, a.pow(t.abs() * t.signum())));
                }
                if t < 0 {
                    num = -num;
                }
                let qq = &unit(n, 1, self.q(1)) - &unit(n, 1, self.q(-1));
                num.div_int_exact(&BigInt::from(t.abs()))
                    .and_then(|x| x.div_exact(&qq))
                    .ok_or_else(|| {
                        QloopError::NonIntegrable(format!("h_{t} has no integral restriction"))
                    })?
            }
            Op::P(t) => {
                // Σ p_{±s} z^s = Π_{−w∈𝓕} (1 − c_w z) / Π_{w∈𝓕} (1 − c_w z),
                // c_w = q⁻¹w for the + series and q w⁻¹ for the − series.
                let (plus, minus) = self.taut_chars("F", s)?;
                let m = t.unsigned_abs() as usize;
                let c = |w: &Mono| if t >= 0 { w.mul(&self.q(-1)) } else { w.inv().mul(&self.q(1)) };
                let mut acc = vec![TorusScalar::zero(n); m + 1];
                acc[0] = TorusScalar::one(n);
                for w in &plus {
                    let ser: Vec<TorusScalar> = (0..=m as i64).map(|k| unit(n, 1, c(w).pow(k))).collect();
                    acc = series_mul(&acc, &ser);
                }
                for w in &minus {
                    let mut ser = vec![TorusScalar::zero(n); m + 1];
                    ser[0] = TorusScalar::one(n);
                    if m >= 1 {
                        ser[1] = unit(n, -1, c(w));
                    }
                    acc = series_mul(&acc, &ser);
                }
                acc[m].clone()
            }
            _ => {
                return Err(QloopError::Invalid(format!("{op:?} is not diagonal")));
            }
        })
    }

    /// `(x⁺_0)^n / [n]!` or `(x⁻_0)^n / [n]!` by composition and exact division.
    pub fn divided_power_by_composition(&self, plus: bool, n: u32, c: &FixedClass) -> Result<FixedClass> {
        let op = if plus { Op::XPlus(0) } else { Op::XMinus(0) };
        let mut v = c.clone();
        for _ in 0..n {
            v = self.act(&op, &v)?;
        }
        let d = TorusScalar::from_laurent(self.ell(), &qfact(n as i64));
        Ok(v.map(|_, _, x| x.div_torus(&d)))
    }
}
