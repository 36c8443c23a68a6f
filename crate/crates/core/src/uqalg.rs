//! Words in the generators of the quantum loop algebra, their
//! (anti)automorphisms, and their action on integrable modules.
//!
//! Algebra elements are never normalized modulo the defining relations;
//! identities are checked as operator identities on faithful modules.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{QloopError, Result};
use crate::qring::{neg_q_pow, qbinom, qfact, sign_pow, BarLaurent};

/// A generator. The first field is the node; for a rank-`n` datum the
/// affine node has index `n` and carries only Kac–Moody letters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Letter {
    E(usize),
    F(usize),
    /// `k_i^p`.
    K(usize, i64),
    EDiv(usize, u32),
    FDiv(usize, u32),
    XPlus(usize, i64),
    XMinus(usize, i64),
    /// `k⁺_{i,n}`, `n ≥ 0`.
    KPlus(usize, i64),
    /// `k⁻_{i,n}`, `n ≤ 0`.
    KMinus(usize, i64),
    H(usize, i64),
    P(usize, i64),
}

impl Letter {
    pub fn node(&self) -> usize {
        match *self {
            Letter::E(i)
            | Letter::F(i)
            | Letter::K(i, _)
            | Letter::EDiv(i, _)
            | Letter::FDiv(i, _)
            | Letter::XPlus(i, _)
            | Letter::XMinus(i, _)
            | Letter::KPlus(i, _)
            | Letter::KMinus(i, _)
            | Letter::H(i, _)
            | Letter::P(i, _) => i,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = self.node() + 1;
        match *self {
            Letter::E(_) => write!(f, "e{i}"),
            Letter::F(_) => write!(f, "f{i}"),
            Letter::K(_, p) => write!(f, "k{i}^{p}"),
            Letter::EDiv(_, n) => write!(f, "e{i}^({n})"),
            Letter::FDiv(_, n) => write!(f, "f{i}^({n})"),
            Letter::XPlus(_, r) => write!(f, "x+{i},{r}"),
            Letter::XMinus(_, r) => write!(f, "x-{i},{r}"),
            Letter::KPlus(_, n) => write!(f, "k+{i},{n}"),
            Letter::KMinus(_, n) => write!(f, "k-{i},{n}"),
            Letter::H(_, s) => write!(f, "h{i},{s}"),
            Letter::P(_, s) => write!(f, "p{i},{s}"),
        }
    }
}

/// A `ℤ[q,q⁻¹]`-linear combination of words. A word acts as the composite
/// of its letters: the rightmost letter is applied first.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct OpExpr {
    terms: BTreeMap<Vec<Letter>, BarLaurent>,
}

impl OpExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(BarLaurent::one())
    }

    pub fn scalar(c: BarLaurent) -> Self {
        Self::term(c, Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        Self::word(vec![l])
    }

    pub fn word(w: Vec<Letter>) -> Self {
        Self::term(BarLaurent::one(), w)
    }

    pub fn term(c: BarLaurent, w: Vec<Letter>) -> Self {
        let mut out = Self::zero();
        out.add_term(w, c);
        out
    }

    fn add_term(&mut self, w: Vec<Letter>, c: BarLaurent) {
        let slot = self.terms.entry(w).or_insert_with(BarLaurent::zero);
        *slot += &c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Letter>, &BarLaurent)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-BarLaurent::one()))
    }

    pub fn scale(&self, c: &BarLaurent) -> Self {
        let mut out = Self::zero();
        for (w, v) in &self.terms {
            out.add_term(w.clone(), v * c);
        }
        out
    }

    /// Product `self · o` (concatenation of words).
    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                let mut w = w1.clone();
                w.extend(w2.iter().copied());
                out.add_term(w, c1 * c2);
            }
        }
        out
    }

    /// Letters used by any word.
    pub fn letters(&self) -> Vec<Letter> {
        let mut v: Vec<Letter> = self.terms.keys().flatten().copied().collect();
        v.sort();
        v.dedup();
        v
    }

    /// Act on a vector of a module.
    pub fn eval<M: ModuleHandle + ?Sized>(&self, m: &M, v: &M::Vector) -> Result<M::Vector> {
        let mut acc = m.zero_like(v);
        for (w, c) in &self.terms {
            let mut x = v.clone();
            for l in w.iter().rev() {
                x = apply_letter(m, l, &x)?;
                if m.is_zero(&x) {
                    break;
                }
            }
            acc = m.add(&acc, &m.scale(&x, c));
        }
        Ok(acc)
    }

    /// Rewrite letter by letter: `anti` reverses words, `bar` maps `q ↦ q⁻¹`
    /// on coefficients.
    fn rewrite(&self, anti: bool, bar: bool, f: impl Fn(&Letter) -> Result<OpExpr>) -> Result<Self> {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            let mut acc = OpExpr::scalar(if bar { c.bar() } else { c.clone() });
            let letters: Vec<&Letter> = if anti { w.iter().rev().collect() } else { w.iter().collect() };
            for l in letters {
                acc = acc.mul(&f(l)?);
            }
            out = out.add(&acc);
        }
        Ok(out)
    }

    /// `τ`: antiautomorphism, `q ↦ q⁻¹`, `e ↔ f`, `k ↦ k⁻¹`,
    /// `x^±_r ↦ x^∓_{−r}`, `k^±_n ↦ k^∓_{−n}`.
    pub fn tau(&self) -> Result<Self> {
        self.rewrite(true, true, |l| {
            Ok(OpExpr::letter(match *l {
                Letter::E(i) => Letter::F(i),
                Letter::F(i) => Letter::E(i),
                Letter::K(i, p) => Letter::K(i, -p),
                Letter::EDiv(i, n) => Letter::FDiv(i, n),
                Letter::FDiv(i, n) => Letter::EDiv(i, n),
                Letter::XPlus(i, r) => Letter::XMinus(i, -r),
                Letter::XMinus(i, r) => Letter::XPlus(i, -r),
                Letter::KPlus(i, n) => Letter::KMinus(i, -n),
                Letter::KMinus(i, n) => Letter::KPlus(i, -n),
                _ => return Err(unsupported("τ", l)),
            }))
        })
    }

    /// `ψ`: `q`-linear antiautomorphism, `e ↦ qkf`, `f ↦ qk⁻¹e`, `k ↦ k`.
    pub fn psi(&self) -> Result<Self> {
        self.rewrite(true, false, |l| {
            Ok(match *l {
                Letter::E(i) => OpExpr::term(q(1), vec![Letter::K(i, 1), Letter::F(i)]),
                Letter::F(i) => OpExpr::term(q(1), vec![Letter::K(i, -1), Letter::E(i)]),
                Letter::K(i, p) => OpExpr::letter(Letter::K(i, p)),
                Letter::EDiv(i, n) => {
                    let n = n as i64;
                    OpExpr::term(q(n * n), vec![Letter::K(i, n), Letter::FDiv(i, n as u32)])
                }
                Letter::FDiv(i, n) => {
                    let n = n as i64;
                    OpExpr::term(q(n * n), vec![Letter::K(i, -n), Letter::EDiv(i, n as u32)])
                }
                _ => return Err(unsupported("ψ", l)),
            })
        })
    }

    /// Antipode: `e ↦ −ek⁻¹`, `f ↦ −kf`, `k ↦ k⁻¹`.
    pub fn antipode(&self) -> Result<Self> {
        self.rewrite(true, false, |l| {
            Ok(match *l {
                Letter::E(i) => OpExpr::term(-q(0), vec![Letter::E(i), Letter::K(i, -1)]),
                Letter::F(i) => OpExpr::term(-q(0), vec![Letter::K(i, 1), Letter::F(i)]),
                Letter::K(i, p) => OpExpr::letter(Letter::K(i, -p)),
                Letter::EDiv(i, n) => {
                    let n = n as i64;
                    let c = q(-n * (n - 1)).scale(&BigInt::from(sign_pow(n)));
                    OpExpr::term(c, vec![Letter::EDiv(i, n as u32), Letter::K(i, -n)])
                }
                Letter::FDiv(i, n) => {
                    let n = n as i64;
                    let c = q(n * (n - 1)).scale(&BigInt::from(sign_pow(n)));
                    OpExpr::term(c, vec![Letter::K(i, n), Letter::FDiv(i, n as u32)])
                }
                _ => return Err(unsupported("S", l)),
            })
        })
    }

    /// Bar involution: automorphism, `q ↦ q⁻¹`, `e ↦ e`, `f ↦ f`, `k ↦ k⁻¹`.
    pub fn bar(&self) -> Result<Self> {
        self.rewrite(false, true, |l| {
            Ok(OpExpr::letter(match *l {
                Letter::E(_) | Letter::F(_) | Letter::EDiv(..) | Letter::FDiv(..) => *l,
                Letter::K(i, p) => Letter::K(i, -p),
                _ => return Err(unsupported("bar", l)),
            }))
        })
    }

    /// `A`: `x^±_r ↦ −q^{∓1}x^±_r`, fixing the Cartan letters. Finite nodes
    /// only (`rank` is the number of finite nodes).
    pub fn auto_a(&self, rank: usize) -> Result<Self> {
        self.rewrite(false, false, |l| {
            if l.node() >= rank {
                return Err(unsupported("A", l));
            }
            Ok(match *l {
                Letter::E(_) | Letter::XPlus(..) => OpExpr::term(-q(-1), vec![*l]),
                Letter::F(_) | Letter::XMinus(..) => OpExpr::term(-q(1), vec![*l]),
                Letter::EDiv(_, n) => OpExpr::term(neg_q_pow(-(n as i64)), vec![*l]),
                Letter::FDiv(_, n) => OpExpr::term(neg_q_pow(n as i64), vec![*l]),
                Letter::K(..) | Letter::KPlus(..) | Letter::KMinus(..) | Letter::H(..) | Letter::P(..) => {
                    OpExpr::letter(*l)
                }
            })
        })
    }

    /// `B`: `x⁺_r ↦ −x⁺_r k`, `x⁻_r ↦ −k⁻¹x⁻_r`, fixing the Cartan letters.
    pub fn auto_b(&self, rank: usize) -> Result<Self> {
        self.rewrite(false, false, |l| {
            if l.node() >= rank {
                return Err(unsupported("B", l));
            }
            Ok(match *l {
                Letter::E(i) => OpExpr::term(-q(0), vec![*l, Letter::K(i, 1)]),
                Letter::XPlus(i, _) => OpExpr::term(-q(0), vec![*l, Letter::K(i, 1)]),
                Letter::F(i) => OpExpr::term(-q(0), vec![Letter::K(i, -1), *l]),
                Letter::XMinus(i, _) => OpExpr::term(-q(0), vec![Letter::K(i, -1), *l]),
                Letter::EDiv(i, n) => {
                    let n = n as i64;
                    let c = q(n * (n - 1)).scale(&BigInt::from(sign_pow(n)));
                    OpExpr::term(c, vec![*l, Letter::K(i, n)])
                }
                Letter::FDiv(i, n) => {
                    let n = n as i64;
                    let c = q(-n * (n - 1)).scale(&BigInt::from(sign_pow(n)));
                    OpExpr::term(c, vec![Letter::K(i, -n), *l])
                }
                Letter::K(..) | Letter::KPlus(..) | Letter::KMinus(..) | Letter::H(..) | Letter::P(..) => {
                    OpExpr::letter(*l)
                }
            })
        })
    }
}

impl fmt::Display for OpExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let word: Vec<String> = w.iter().map(Letter::to_string).collect();
            let word = if word.is_empty() { "1".to_string() } else { word.join("*") };
            write!(f, "({c})*{word}")?;
        }
        Ok(())
    }
}

fn q(e: i64) -> BarLaurent {
    BarLaurent::q_pow(e)
}

fn unsupported(map: &str, l: &Letter) -> QloopError {
    QloopError::UnsupportedRewrite(format!("{map} does not cover the letter {l}"))
}

/// A weight-graded integrable module with an action of the letters.
pub trait ModuleHandle: Sync {
    type Vector: Clone + Send + Sync;

    /// Number of finite nodes.
    fn rank(&self) -> usize;

    /// Action of one letter. Divided powers may be left to the default
    /// (composition divided by `[n]!`) by returning `Unassigned`.
    fn apply(&self, l: &Letter, v: &Self::Vector) -> Result<Self::Vector>;

    fn add(&self, a: &Self::Vector, b: &Self::Vector) -> Self::Vector;
    fn scale(&self, v: &Self::Vector, c: &BarLaurent) -> Self::Vector;
    /// Exact division by a nonzero scalar.
    fn div_exact(&self, v: &Self::Vector, c: &BarLaurent) -> Result<Self::Vector>;
    fn zero_like(&self, v: &Self::Vector) -> Self::Vector;
    fn is_zero(&self, v: &Self::Vector) -> bool;

    /// Split into eigenvectors of `k_i`: pairs `(⟨wt, α_i^∨⟩, part)`.
    fn weight_parts(&self, node: usize, v: &Self::Vector) -> Vec<(i64, Self::Vector)>;

    /// Bound on the length of every `i`-string.
    fn string_bound(&self, node: usize) -> u32;

    /// Vectors on which operator identities are tested.
    fn spanning_set(&self) -> Vec<Self::Vector>;

    fn render(&self, v: &Self::Vector) -> String;

    fn sub(&self, a: &Self::Vector, b: &Self::Vector) -> Self::Vector {
        self.add(a, &self.scale(b, &-BarLaurent::one()))
    }

    fn equal(&self, a: &Self::Vector, b: &Self::Vector) -> bool {
        self.is_zero(&self.sub(a, b))
    }
}

/// Apply one letter, falling back to composition for divided powers.
pub fn apply_letter<M: ModuleHandle + ?Sized>(m: &M, l: &Letter, v: &M::Vector) -> Result<M::Vector> {
    match m.apply(l, v) {
        Err(QloopError::Unassigned(_)) => match *l {
            Letter::EDiv(i, n) | Letter::FDiv(i, n) => {
                let step = if matches!(l, Letter::EDiv(..)) { Letter::E(i) } else { Letter::F(i) };
                let mut x = v.clone();
                for _ in 0..n {
                    x = m.apply(&step, &x)?;
                }
                m.div_exact(&x, &qfact(n as i64))
            }
            _ => Err(QloopError::Unassigned(l.to_string())),
        },
        r => r,
    }
}

fn pow_div<M: ModuleHandle + ?Sized>(m: &M, plus: bool, i: usize, n: u32, v: &M::Vector) -> Result<M::Vector> {
    if n == 0 {
        return Ok(v.clone());
    }
    let l = if plus { Letter::EDiv(i, n) } else { Letter::FDiv(i, n) };
    apply_letter(m, &l, v)
}

/// Braid operator on an integrable module: `sign = +1` gives
/// `T(u) = Σ_{a−b+c=−n} (−1)^b q^{b−ac} e^{(a)}f^{(b)}e^{(c)}u` on a vector of
/// weight `n`; `sign = −1` gives its inverse
/// `Σ_{a−b+c=n} (−1)^b q^{ac−b} f^{(a)}e^{(b)}f^{(c)}u`.
pub fn braid_t<M: ModuleHandle + ?Sized>(m: &M, node: usize, v: &M::Vector, sign: i32) -> Result<M::Vector> {
    let bound = m.string_bound(node) as i64;
    let plus = sign > 0;
    let mut acc = m.zero_like(v);
    for (n, u) in m.weight_parts(node, v) {
        let target = if plus { -n } else { n };
        for c in 0..=bound {
            let uc = pow_div(m, plus, node, c as u32, &u)?;
            if m.is_zero(&uc) {
                continue;
            }
            for b in 0..=bound {
                let a = target + b - c;
                if a < 0 || a > bound {
                    continue;
                }
                let ub = pow_div(m, !plus, node, b as u32, &uc)?;
                let ua = pow_div(m, plus, node, a as u32, &ub)?;
                let e = if plus { b - a * c } else { a * c - b };
                let coeff = q(e).scale(&BigInt::from(sign_pow(b)));
                acc = m.add(&acc, &m.scale(&ua, &coeff));
            }
        }
    }
    Ok(acc)
}

/// Unique decomposition `v = Σ_r f^{(r)} x_r` with `e(x_r) = 0`.
pub fn string_decompose<M: ModuleHandle + ?Sized>(
    node: usize,
    m: &M,
    v: &M::Vector,
) -> Result<Vec<(u32, M::Vector)>> {
    let bound = m.string_bound(node);
    let mut parts: BTreeMap<u32, M::Vector> = BTreeMap::new();
    for (n, u) in m.weight_parts(node, v) {
        let mut rest = u;
        let mut top = bound + 1;
        while !m.is_zero(&rest) {
            // the largest r with e^{(r)}(rest) ≠ 0
            let mut found = None;
            for r in (0..top.min(bound + 1)).rev() {
                let er = pow_div(m, true, node, r, &rest)?;
                if !m.is_zero(&er) {
                    found = Some((r, er));
                    break;
                }
            }
            let (r, er) = found.ok_or_else(|| {
                QloopError::NonIntegrable(format!("no string through {}", m.render(&rest)))
            })?;
            let hw = n + 2 * r as i64;
            if hw < r as i64 {
                return Err(QloopError::NonIntegrable(format!(
                    "string of length {r} at highest weight {hw}"
                )));
            }
            let xr = m.div_exact(&er, &qbinom(hw, r as i64))?;
            rest = m.sub(&rest, &pow_div(m, false, node, r, &xr)?);
            let slot = parts.remove(&r).unwrap_or_else(|| m.zero_like(&xr));
            parts.insert(r, m.add(&slot, &xr));
            if r == 0 && !m.is_zero(&rest) {
                return Err(QloopError::NonIntegrable(format!(
                    "string decomposition does not terminate at {}",
                    m.render(&rest)
                )));
            }
            top = r;
        }
    }
    Ok(parts.into_iter().filter(|(_, x)| !m.is_zero(x)).collect())
}

/// Direction of a Kashiwara operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kashiwara {
    E,
    F,
}

/// `f̃(Σ f^{(r)}x_r) = Σ f^{(r+1)}x_r`, `ẽ(Σ f^{(r)}x_r) = Σ_{r≥1} f^{(r−1)}x_r`.
pub fn kashiwara<M: ModuleHandle + ?Sized>(node: usize, m: &M, v: &M::Vector, dir: Kashiwara) -> Result<M::Vector> {
    let mut acc = m.zero_like(v);
    for (r, x) in string_decompose(node, m, v)? {
        let r2 = match dir {
            Kashiwara::F => r + 1,
            Kashiwara::E if r == 0 => continue,
            Kashiwara::E => r - 1,
        };
        acc = m.add(&acc, &pow_div(m, false, node, r2, &x)?);
    }
    Ok(acc)
}

/// Action of `ψ(x)` for a letter `x` of node `i` of a rank-1 datum: the
/// Kac–Moody letters use the rewrite, the loop letters use
/// `ψ(x^±_r) = q^{−2r}·T∘A(x^±_{−r})∘T⁻¹`.
pub fn psi_action<M: ModuleHandle + ?Sized>(m: &M, l: &Letter, v: &M::Vector) -> Result<M::Vector> {
    match *l {
        Letter::XPlus(i, r) | Letter::XMinus(i, r) => {
            let plus = matches!(l, Letter::XPlus(..));
            let inner = if plus { Letter::XPlus(i, -r) } else { Letter::XMinus(i, -r) };
            let c = &q(-2 * r) * &-q(if plus { -1 } else { 1 });
            let w = braid_t(m, i, v, -1)?;
            let w = apply_letter(m, &inner, &w)?;
            Ok(m.scale(&braid_t(m, i, &w, 1)?, &c))
        }
        _ => OpExpr::letter(*l).psi()?.eval(m, v),
    }
}

/// Action of `x̄` for a letter `x` of a rank-1 datum: the Kac–Moody letters
/// use the rewrite, the loop letters use `x̄^±_r = q^{2r}·T∘B(x^∓_r)∘T⁻¹`.
pub fn bar_action<M: ModuleHandle + ?Sized>(m: &M, l: &Letter, v: &M::Vector) -> Result<M::Vector> {
    match *l {
        Letter::XPlus(i, r) | Letter::XMinus(i, r) => {
            let other = if matches!(l, Letter::XPlus(..)) { Letter::XMinus(i, r) } else { Letter::XPlus(i, r) };
            let inner = OpExpr::letter(other).auto_b(m.rank())?;
            let w = braid_t(m, i, v, -1)?;
            let w = inner.eval(m, &w)?;
            Ok(m.scale(&braid_t(m, i, &w, 1)?, &q(2 * r)))
        }
        _ => OpExpr::letter(*l).bar()?.eval(m, v),
    }
}

/// Outcome of checking one family of defining relations.
#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub relation_id: String,
    pub instances_checked: usize,
    pub failures: Vec<String>,
    pub note: Option<String>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Relation families of a rank-1 node, checked coefficient-wise.
pub const RELATIONS: &[&str] = &[
    "k_inverse",
    "cartan_commute",
    "k_x_conjugation",
    "k_x_exchange",
    "x_x_exchange",
    "x_plus_x_minus",
    "h_x",
    "serre",
    "kac_moody",
];

/// An operator identity `lhs = rhs` tagged by its instance label.
struct Instance {
    label: String,
    lhs: OpExpr,
    rhs: OpExpr,
}

fn w(letters: &[Letter]) -> OpExpr {
    OpExpr::word(letters.to_vec())
}

fn instances(relation: &str, i: usize, window: i64) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    let rng = -window..=window;
    let x = |s: i64, r: i64| if s > 0 { Letter::XPlus(i, r) } else { Letter::XMinus(i, r) };
    let kk = |e: i64, n: i64| if e > 0 { Letter::KPlus(i, n) } else { Letter::KMinus(i, n) };
    match relation {
        "k_inverse" => {
            out.push(Instance { label: "k k^-1".into(), lhs: w(&[Letter::K(i, 1), Letter::K(i, -1)]), rhs: OpExpr::one() });
            out.push(Instance { label: "k^-1 k".into(), lhs: w(&[Letter::K(i, -1), Letter::K(i, 1)]), rhs: OpExpr::one() });
        }
        "cartan_commute" => {
            let mut cartan = vec![Letter::K(i, 1)];
            for n in 0..=window {
                cartan.push(Letter::KPlus(i, n));
                cartan.push(Letter::KMinus(i, -n));
            }
            for (a, b) in cartan.iter().zip(cartan.iter().skip(1)) {
                out.push(Instance { label: format!("[{a}, {b}]"), lhs: w(&[*a, *b]), rhs: w(&[*b, *a]) });
            }
        }
        "k_x_conjugation" => {
            for s in [1, -1] {
                for r in rng.clone() {
                    out.push(Instance {
                        label: format!("k {} k^-1", x(s, r)),
                        lhs: w(&[Letter::K(i, 1), x(s, r), Letter::K(i, -1)]),
                        rhs: OpExpr::term(q(2 * s), vec![x(s, r)]),
                    });
                }
            }
        }
        "k_x_exchange" => {
            // k^ε_{εM+1} x^σ_R − q^{2σ} k^ε_{εM} x^σ_{R+1}
            //   = q^{2σ} x^σ_R k^ε_{εM+1} − x^σ_{R+1} k^ε_{εM}
            for e in [1, -1] {
                for s in [1, -1] {
                    for m in -1..=window {
                        for r in rng.clone() {
                            let k1 = kk(e, e * m + 1);
                            let k0 = kk(e, e * m);
                            let lhs = w(&[k1, x(s, r)]).sub(&OpExpr::term(q(2 * s), vec![k0, x(s, r + 1)]));
                            let rhs = OpExpr::term(q(2 * s), vec![x(s, r), k1]).sub(&w(&[x(s, r + 1), k0]));
                            out.push(Instance { label: format!("{k1} {}", x(s, r)), lhs, rhs });
                        }
                    }
                }
            }
        }
        "x_x_exchange" => {
            // x_{R+1}x_S − q^{2σ}x_R x_{S+1} = q^{2σ}x_S x_{R+1} − x_{S+1}x_R
            for s in [1, -1] {
                for r in rng.clone() {
                    for t in rng.clone() {
                        let lhs = w(&[x(s, r + 1), x(s, t)]).sub(&OpExpr::term(q(2 * s), vec![x(s, r), x(s, t + 1)]));
                        let rhs = OpExpr::term(q(2 * s), vec![x(s, t), x(s, r + 1)]).sub(&w(&[x(s, t + 1), x(s, r)]));
                        out.push(Instance { label: format!("{} {}", x(s, r), x(s, t)), lhs, rhs });
                    }
                }
            }
        }
        "x_plus_x_minus" => {
            // (q − q⁻¹)[x⁺_r, x⁻_s] = k⁺_{r+s} − k⁻_{r+s}
            for r in rng.clone() {
                for s in rng.clone() {
                    let comm = w(&[x(1, r), x(-1, s)]).sub(&w(&[x(-1, s), x(1, r)]));
                    let lhs = comm.scale(&(q(1) - q(-1)));
                    let rhs = w(&[Letter::KPlus(i, r + s)]).sub(&w(&[Letter::KMinus(i, r + s)]));
                    out.push(Instance { label: format!("[{}, {}]", x(1, r), x(-1, s)), lhs, rhs });
                }
            }
        }
        "h_x" => {
            // [h_s, x^±_r] = ±[2] x^±_{r+s}, s = ±1
            for hs in [1, -1] {
                for s in [1, -1] {
                    for r in rng.clone() {
                        let h = Letter::H(i, hs);
                        let lhs = w(&[h, x(s, r)]).sub(&w(&[x(s, r), h]));
                        let c = crate::qring::qint(2).scale(&BigInt::from(s));
                        out.push(Instance { label: format!("[{h}, {}]", x(s, r)), lhs, rhs: OpExpr::term(c, vec![x(s, r + hs)]) });
                    }
                }
            }
        }
        "serre" => {}
        "kac_moody" => {
            // affine sl₂ on the nodes {i, i+1}: a_{jj} = 2, a_{01} = −2
            let nodes = [i, i + 1];
            for &j in &nodes {
                for &k in &nodes {
                    let a = if j == k { 2 } else { -2 };
                    out.push(Instance {
                        label: format!("k{} e{} k{}^-1", j + 1, k + 1, j + 1),
                        lhs: w(&[Letter::K(j, 1), Letter::E(k), Letter::K(j, -1)]),
                        rhs: OpExpr::term(q(a), vec![Letter::E(k)]),
                    });
                    out.push(Instance {
                        label: format!("k{} f{} k{}^-1", j + 1, k + 1, j + 1),
                        lhs: w(&[Letter::K(j, 1), Letter::F(k), Letter::K(j, -1)]),
                        rhs: OpExpr::term(q(-a), vec![Letter::F(k)]),
                    });
                    let comm = w(&[Letter::E(j), Letter::F(k)]).sub(&w(&[Letter::F(k), Letter::E(j)]));
                    let rhs = if j == k {
                        w(&[Letter::K(j, 1)]).sub(&w(&[Letter::K(j, -1)]))
                    } else {
                        OpExpr::zero()
                    };
                    out.push(Instance {
                        label: format!("[e{}, f{}]", j + 1, k + 1),
                        lhs: comm.scale(&(q(1) - q(-1))),
                        rhs,
                    });
                    if j != k {
                        // Σ_p (−1)^p e_j^{(p)} e_k e_j^{(3−p)} = 0, and likewise for f
                        for (div, one) in [(Letter::EDiv as fn(usize, u32) -> Letter, Letter::E(k)), (Letter::FDiv, Letter::F(k))] {
                            let mut lhs = OpExpr::zero();
                            for p in 0..=3u32 {
                                let mut word = Vec::new();
                                if p > 0 {
                                    word.push(div(j, p));
                                }
                                word.push(one);
                                if p < 3 {
                                    word.push(div(j, 3 - p));
                                }
                                lhs = lhs.add(&OpExpr::term(q(0).scale(&BigInt::from(sign_pow(p as i64))), word));
                            }
                            out.push(Instance { label: format!("serre {} {}", div(j, 1), one), lhs, rhs: OpExpr::zero() });
                        }
                    }
                }
            }
        }
        _ => return Err(QloopError::Invalid(format!("unknown relation {relation}"))),
    }
    Ok(out)
}

/// Check one relation family of node `i` on the spanning set of `m`.
pub fn relation_check<M: ModuleHandle + ?Sized>(m: &M, node: usize, relation: &str, window: i64) -> Result<RelationReport> {
    let inst = instances(relation, node, window)?;
    let vecs = m.spanning_set();
    let note = (relation == "serre" && m.rank() == 1)
        .then(|| "no pair of distinct nodes at rank 1: the relation is vacuous".to_string());
    let results: Vec<Result<Option<String>>> = inst
        .par_iter()
        .flat_map_iter(|ins| vecs.iter().enumerate().map(move |(k, v)| (ins, k, v)))
        .map(|(ins, k, v)| {
            let l = ins.lhs.eval(m, v)?;
            let r = ins.rhs.eval(m, v)?;
            Ok((!m.equal(&l, &r)).then(|| format!("{} on spanning vector {k}: {}", ins.label, m.render(v))))
        })
        .collect();
    let mut failures = Vec::new();
    for r in results {
        if let Some(f) = r? {
            failures.push(f);
        }
    }
    Ok(RelationReport { relation_id: relation.to_string(), instances_checked: inst.len() * vecs.len(), failures, note })
}
