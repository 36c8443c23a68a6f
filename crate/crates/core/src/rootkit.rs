//! Simply-laced root systems: Cartan data, roots, the Weyl group, affine root
//! sets attached to translations, and the sign and length statistics built on
//! them.
//!
//! Indices are 0-based. Root vectors are coordinates in the simple-root basis,
//! weight vectors are coordinates in the fundamental-weight basis.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use num_rational::Rational64;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{QloopError, Result};

pub type RootVec = Vec<i64>;
pub type WeightVec = Vec<i64>;

/// A vector together with the lattice basis it is written in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeVec {
    Root(RootVec),
    Weight(WeightVec),
}

/// An element `α + kδ` of `Q ⊕ ℤδ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AffineRoot {
    pub finite: RootVec,
    pub delta: i64,
}

impl AffineRoot {
    pub fn new(finite: RootVec, delta: i64) -> Self {
        AffineRoot { finite, delta }
    }
}

impl fmt::Display for AffineRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.finite.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = if c.abs() == 1 { String::new() } else { c.abs().to_string() };
            write!(f, "{sign}{mag}a{}", i + 1)?;
            first = false;
        }
        if self.delta != 0 || first {
            let c = self.delta;
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = if c.abs() == 1 { String::new() } else { c.abs().to_string() };
            write!(f, "{sign}{mag}d")?;
        }
        Ok(())
    }
}

/// A simply-laced Cartan datum of type A, D or E with cached root data.
#[derive(Clone, Debug)]
pub struct CartanDatum {
    label: String,
    cartan: Vec<Vec<i64>>,
    cartan_inv: Vec<Vec<Rational64>>,
    positive: Vec<RootVec>,
    highest: RootVec,
    bar: Vec<usize>,
    w0: WeylElement,
}

fn rank_of(label: &str, kind: char) -> Result<usize> {
    label[1..]
        .parse::<usize>()
        .map_err(|_| QloopError::Invalid(format!("bad rank in type `{label}`")))
        .and_then(|n| {
            let ok = match kind {
                'A' => n >= 1,
                'D' => n >= 4,
                'E' => (6..=8).contains(&n),
                _ => false,
            };
            if ok {
                Ok(n)
            } else {
                Err(QloopError::Invalid(format!("no Dynkin diagram `{label}`")))
            }
        })
}

/// Edges of the standard diagrams, 0-based.
fn diagram_edges(kind: char, n: usize) -> Vec<(usize, usize)> {
    match kind {
        'A' => (1..n).map(|i| (i - 1, i)).collect(),
        'D' => {
            let mut e: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
            e.push((n - 3, n - 1));
            e
        }
        // 1-3-4-5-…-n with 2 attached to 4
        'E' => {
            let mut e = vec![(0, 2), (1, 3)];
            e.extend((3..n).map(|i| (i - 1, i)));
            e
        }
        _ => unreachable!(),
    }
}

impl CartanDatum {
    /// Parses `A3`, `D5`, `E8`, … Other types are rejected.
    pub fn parse(label: &str) -> Result<Self> {
        let label = label.trim().to_ascii_uppercase();
        let kind = label
            .chars()
            .next()
            .ok_or_else(|| QloopError::Invalid("empty type".into()))?;
        if !matches!(kind, 'A' | 'D' | 'E') {
            return Err(QloopError::Invalid(format!(
                "type `{label}` is not simply laced of type A, D or E"
            )));
        }
        let n = rank_of(&label, kind)?;
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (i, j) in diagram_edges(kind, n) {
            a[i][j] = -1;
            a[j][i] = -1;
        }
        Self::from_matrix(&label, a)
    }

    /// Builds a datum from a Cartan matrix, checking that it is of type ADE.
    pub fn from_matrix(label: &str, cartan: Vec<Vec<i64>>) -> Result<Self> {
        validate_ade(&cartan)?;
        let cartan_inv = invert(&cartan)?;
        let mut d = CartanDatum {
            label: label.to_string(),
            cartan,
            cartan_inv,
            positive: Vec::new(),
            highest: Vec::new(),
            bar: Vec::new(),
            w0: WeylElement::identity(0),
        };
        d.positive = d.enumerate_positive_roots();
        d.highest = d
            .positive
            .iter()
            .max_by_key(|r| r.iter().sum::<i64>())
            .cloned()
            .unwrap();
        d.w0 = d.build_longest();
        let n = d.rank();
        d.bar = (0..n)
            .map(|i| {
                let img = d.w0.apply_root(&d.simple_root(i));
                (0..n)
                    .find(|&j| img.iter().enumerate().all(|(k, &c)| c == -i64::from(k == j)))
                    .expect("w0 maps simple roots to negative simple roots")
            })
            .collect();
        Ok(d)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.cartan[i][j]
    }

    pub fn simple_root(&self, i: usize) -> RootVec {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        v
    }

    pub fn fundamental_weight(&self, i: usize) -> WeightVec {
        self.simple_root(i)
    }

    /// `ρ = Σ ωᵢ`.
    pub fn rho(&self) -> WeightVec {
        vec![1; self.rank()]
    }

    /// Root coordinates rewritten in the weight basis.
    pub fn root_to_weight(&self, alpha: &[i64]) -> WeightVec {
        let n = self.rank();
        (0..n)
            .map(|i| (0..n).map(|j| self.cartan[i][j] * alpha[j]).sum())
            .collect()
    }

    /// Weight coordinates rewritten in the root basis, if the weight lies in `Q`.
    pub fn weight_to_root(&self, lambda: &[i64]) -> Option<RootVec> {
        let n = self.rank();
        (0..n)
            .map(|i| {
                let v: Rational64 = (0..n)
                    .map(|j| self.cartan_inv[i][j] * Rational64::from(lambda[j]))
                    .sum();
                v.is_integer().then(|| v.to_integer())
            })
            .collect()
    }

    /// The symmetric bilinear form with `(ωᵢ, αⱼ) = δᵢⱼ`.
    pub fn pairing(&self, x: &LatticeVec, y: &LatticeVec) -> Result<Rational64> {
        let n = self.rank();
        let len = |v: &LatticeVec| match v {
            LatticeVec::Root(r) | LatticeVec::Weight(r) => r.len(),
        };
        if len(x) != n || len(y) != n {
            return Err(QloopError::Dimension(format!(
                "vectors of length {}, {} for rank {n}",
                len(x),
                len(y)
            )));
        }
        Ok(match (x, y) {
            (LatticeVec::Root(a), LatticeVec::Root(b)) => Rational64::from(self.pair_rr(a, b)),
            (LatticeVec::Weight(l), LatticeVec::Root(a))
            | (LatticeVec::Root(a), LatticeVec::Weight(l)) => Rational64::from(self.pair_wr(l, a)),
            (LatticeVec::Weight(l), LatticeVec::Weight(m)) => {
                let mut s = Rational64::zero();
                for i in 0..n {
                    for j in 0..n {
                        s += self.cartan_inv[i][j] * Rational64::from(l[i] * m[j]);
                    }
                }
                s
            }
        })
    }

    /// `(α, β)` for root vectors.
    pub fn pair_rr(&self, a: &[i64], b: &[i64]) -> i64 {
        let n = self.rank();
        let mut s = 0;
        for i in 0..n {
            if a[i] == 0 {
                continue;
            }
            for j in 0..n {
                s += a[i] * self.cartan[i][j] * b[j];
            }
        }
        s
    }

    /// `(λ, α)` for a weight and a root.
    pub fn pair_wr(&self, l: &[i64], a: &[i64]) -> i64 {
        l.iter().zip(a).map(|(x, y)| x * y).sum()
    }

    /// `|α|² = Σᵢ (ωᵢ, α)²`.
    pub fn norm2(&self, alpha: &[i64]) -> i64 {
        alpha.iter().map(|c| c * c).sum()
    }

    pub fn positive_roots(&self) -> &[RootVec] {
        &self.positive
    }

    pub fn negative_roots(&self) -> Vec<RootVec> {
        self.positive.iter().map(|r| neg(r)).collect()
    }

    pub fn is_root(&self, v: &[i64]) -> bool {
        let p: RootVec = v.to_vec();
        self.positive.contains(&p) || self.positive.contains(&neg(&p))
    }

    pub fn highest_root(&self) -> &RootVec {
        &self.highest
    }

    /// `c = 1 + Σ cᵢ` where `θ = Σ cᵢαᵢ`.
    pub fn coxeter_number(&self) -> i64 {
        1 + self.highest.iter().sum::<i64>()
    }

    pub fn longest_element(&self) -> &WeylElement {
        &self.w0
    }

    /// The index `ī` with `w₀(αᵢ) = −α_ī`.
    pub fn bar_index(&self, i: usize) -> usize {
        self.bar[i]
    }

    fn enumerate_positive_roots(&self) -> Vec<RootVec> {
        let n = self.rank();
        let mut seen: BTreeSet<RootVec> = (0..n).map(|i| self.simple_root(i)).collect();
        let mut queue: VecDeque<RootVec> = seen.iter().cloned().collect();
        // for simply-laced data β + αᵢ is a root iff (β, αᵢ) = −1
        while let Some(b) = queue.pop_front() {
            for i in 0..n {
                if self.pair_rr(&b, &self.simple_root(i)) == -1 {
                    let mut c = b.clone();
                    c[i] += 1;
                    if seen.insert(c.clone()) {
                        queue.push_back(c);
                    }
                }
            }
        }
        let mut v: Vec<_> = seen.into_iter().collect();
        v.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
        v
    }

    fn build_longest(&self) -> WeylElement {
        let mut w = WeylElement::identity(self.rank());
        loop {
            let ext = (0..self.rank()).find(|&i| is_positive(&w.apply_root(&self.simple_root(i))));
            match ext {
                Some(i) => {
                    w.mat = mat_mul(&w.mat, &WeylElement::simple(self, i).mat);
                    w.word.push(i);
                }
                None => return w,
            }
        }
    }

    /// `w(λ)` in weight coordinates.
    pub fn act_weight(&self, w: &WeylElement, lambda: &[i64]) -> WeightVec {
        let mut v = lambda.to_vec();
        for &i in w.word().iter().rev() {
            let c = v[i];
            for (j, x) in v.iter_mut().enumerate() {
                *x -= c * self.cartan[j][i];
            }
        }
        v
    }

    /// `w∗α = λ − w(λ) + w(α)`.
    pub fn w_star(&self, w: &WeylElement, alpha: &[i64], lambda: &[i64]) -> RootVec {
        // sᵢ∗β = β + (λᵢ − (β, αᵢ))αᵢ, composed right to left
        let mut b = alpha.to_vec();
        for &i in w.word().iter().rev() {
            let c = lambda[i] - self.pair_rr(&b, &self.simple_root(i));
            b[i] += c;
        }
        b
    }

    /// Inversion set `Δ₊ ∩ w⁻¹Δ₋`.
    pub fn inversions(&self, w: &WeylElement) -> Vec<RootVec> {
        self.positive
            .iter()
            .filter(|r| !is_positive(&w.apply_root(r)))
            .cloned()
            .collect()
    }

    /// `a(w, i) = ½ Σ_{α ∈ Δ₊ ∩ w⁻¹Δ₋} (αᵢ, α)²`. Half-integral in general;
    /// an integer whenever `w(αᵢ)` is a simple root.
    pub fn length_stat_a(&self, w: &WeylElement, i: usize) -> Rational64 {
        let ai = self.simple_root(i);
        let s: i64 = self
            .inversions(w)
            .iter()
            .map(|r| self.pair_rr(&ai, r).pow(2))
            .sum();
        Rational64::new(s, 2)
    }

    /// `Δ̂₊ ∩ ωᵢ(Δ̂₋)` from the closed form
    /// `{α − (n − aᵢ)δ | α ∈ Δ₋, aᵢ > n ≥ 0}`, `aᵢ = −(ωᵢ, α)`.
    pub fn hat_delta_closed(&self, i: usize) -> BTreeSet<AffineRoot> {
        let mut out = BTreeSet::new();
        for a in self.negative_roots() {
            let ai = -a[i];
            for n in 0..ai {
                out.insert(AffineRoot::new(a.clone(), ai - n));
            }
        }
        out
    }

    /// `Δ̂₊ ∩ ωᵢ(Δ̂₋)` by testing every affine root in a box against
    /// `ωᵢ(α + kδ) = α + (k − (ωᵢ, α))δ`.
    pub fn hat_delta_direct(&self, i: usize) -> BTreeSet<AffineRoot> {
        let bound = self.highest[i] + 1;
        let mut out = BTreeSet::new();
        let roots: Vec<RootVec> = self.positive.iter().cloned().chain(self.negative_roots()).collect();
        for a in &roots {
            for k in -bound..=bound {
                let b = AffineRoot::new(a.clone(), k);
                let pre = AffineRoot::new(a.clone(), k + a[i]);
                if affine_positive(&b) && !affine_positive(&pre) {
                    out.insert(b);
                }
            }
        }
        out
    }

    /// The set `Δ̂(ωᵢ)`; both constructions must agree.
    pub fn hat_delta_omega(&self, i: usize) -> Result<BTreeSet<AffineRoot>> {
        let a = self.hat_delta_closed(i);
        let b = self.hat_delta_direct(i);
        if a != b {
            return Err(QloopError::Consistency(format!(
                "affine root sets for ω{} disagree: {} vs {} elements",
                i + 1,
                a.len(),
                b.len()
            )));
        }
        Ok(a)
    }

    /// `γᵢ = Σ_{β ∈ Δ̂(ωᵢ)} β`.
    pub fn gamma(&self, i: usize) -> Result<AffineRoot> {
        let set = self.hat_delta_omega(i)?;
        let mut g = AffineRoot::new(vec![0; self.rank()], 0);
        for b in set {
            add_assign(&mut g.finite, &b.finite);
            g.delta += b.delta;
        }
        Ok(g)
    }

    /// `γᵢ = Σ_{α ∈ Δ₋} aᵢ(α + (1 + aᵢ)/2 δ)`.
    pub fn gamma_summed(&self, i: usize) -> AffineRoot {
        let mut g = AffineRoot::new(vec![0; self.rank()], 0);
        for a in self.negative_roots() {
            let ai = -a[i];
            for (x, y) in g.finite.iter_mut().zip(&a) {
                *x += ai * y;
            }
            g.delta += ai * (1 + ai) / 2;
        }
        g
    }

    /// Pairing on `P̂` with `δ` isotropic and orthogonal to `Q`.
    pub fn pair_affine(&self, x: &AffineRoot, a: &[i64]) -> i64 {
        self.pair_rr(&x.finite, a)
    }

    /// `Σ_{α ∈ Δ₊} (ωᵢ, α)(αᵢ, α)`.
    pub fn killing_sum(&self, i: usize) -> i64 {
        let ai = self.simple_root(i);
        self.positive.iter().map(|r| r[i] * self.pair_rr(&ai, r)).sum()
    }

    /// Checks `(γᵢ, αᵢ) = −c` with `γᵢ` from both constructions.
    pub fn gamma_check(&self, i: usize) -> Result<bool> {
        let g = self.gamma(i)?;
        let h = self.gamma_summed(i);
        let c = self.coxeter_number();
        let ai = self.simple_root(i);
        Ok(g == h && self.pair_affine(&g, &ai) == -c && self.killing_sum(i) == c)
    }

    /// The two proper 2-colorings `I → {±1}` of the Dynkin graph, the first
    /// with `o₀ = +1`.
    pub fn sign_assignments(&self) -> Result<[Vec<i64>; 2]> {
        let n = self.rank();
        let mut o = vec![0i64; n];
        o[0] = 1;
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if i != j && self.cartan[i][j] < 0 {
                    if o[j] == 0 {
                        o[j] = -o[i];
                        queue.push_back(j);
                    } else if o[j] == o[i] {
                        return Err(QloopError::Consistency("Dynkin graph is not bipartite".into()));
                    }
                }
            }
        }
        let other = o.iter().map(|x| -x).collect();
        Ok([o, other])
    }

    /// Checks that `oᵢ·o_ī = (−1)^c` for every `i` and both colorings.
    pub fn sign_check(&self) -> Result<bool> {
        let c = self.coxeter_number();
        let target = if c % 2 == 0 { 1 } else { -1 };
        Ok(self
            .sign_assignments()?
            .iter()
            .all(|o| (0..self.rank()).all(|i| o[i] * o[self.bar[i]] == target)))
    }

    /// The product `v·w`.
    pub fn weyl_mul(&self, v: &WeylElement, w: &WeylElement) -> WeylElement {
        let mat = mat_mul(&v.mat, &w.mat);
        let word = reduced_word(self, &mat);
        WeylElement { mat, word }
    }

    pub fn weyl_inverse(&self, w: &WeylElement) -> WeylElement {
        let word: Vec<usize> = w.word.iter().rev().copied().collect();
        WeylElement::from_word(self, &word).expect("indices already validated")
    }

    /// All of `W`, for rank at most 4.
    pub fn enumerate_weyl(&self) -> Result<Vec<WeylElement>> {
        if self.rank() > 4 {
            return Err(QloopError::Precondition(format!(
                "Weyl group enumeration is limited to rank ≤ 4, got {}",
                self.rank()
            )));
        }
        let id = WeylElement::identity(self.rank());
        let mut seen: HashSet<Vec<Vec<i64>>> = HashSet::from([id.mat.clone()]);
        let mut out = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        let gens: Vec<_> = (0..self.rank()).map(|i| WeylElement::simple(self, i)).collect();
        while let Some(w) = queue.pop_front() {
            for (i, s) in gens.iter().enumerate() {
                let mat = mat_mul(&w.mat, &s.mat);
                if seen.insert(mat.clone()) {
                    // breadth-first order makes the extended word reduced
                    let mut word = w.word.clone();
                    word.push(i);
                    let x = WeylElement { mat, word };
                    out.push(x.clone());
                    queue.push_back(x);
                }
            }
        }
        Ok(out)
    }
}

/// A Weyl group element: its matrix on root coordinates (columns are images
/// of simple roots) and a reduced word `s_{i₁}⋯s_{iₖ}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    mat: Vec<Vec<i64>>,
    word: Vec<usize>,
}

impl WeylElement {
    pub fn identity(n: usize) -> Self {
        let mat = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        WeylElement { mat, word: Vec::new() }
    }

    /// The simple reflection `sᵢ(β) = β − (β, αᵢ)αᵢ`.
    pub fn simple(d: &CartanDatum, i: usize) -> Self {
        let n = d.rank();
        let mut mat = WeylElement::identity(n).mat;
        for j in 0..n {
            mat[i][j] -= d.a(j, i);
        }
        WeylElement { mat, word: vec![i] }
    }

    /// The product `s_{i₁}⋯s_{iₖ}`; the stored word is reduced.
    pub fn from_word(d: &CartanDatum, word: &[usize]) -> Result<Self> {
        let n = d.rank();
        if let Some(&i) = word.iter().find(|&&i| i >= n) {
            return Err(QloopError::Dimension(format!("index {i} out of range for rank {n}")));
        }
        let mut w = WeylElement::identity(n);
        for &i in word {
            w.mat = mat_mul(&w.mat, &WeylElement::simple(d, i).mat);
        }
        w.word = reduced_word(d, &w.mat);
        Ok(w)
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.mat
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    pub fn apply_root(&self, alpha: &[i64]) -> RootVec {
        self.mat
            .iter()
            .map(|row| row.iter().zip(alpha).map(|(a, b)| a * b).sum())
            .collect()
    }

}

fn reduced_word(d: &CartanDatum, m: &[Vec<i64>]) -> Vec<usize> {
    let mut w = WeylElement { mat: m.to_vec(), word: Vec::new() };
    let mut word = Vec::new();
    loop {
        // right descent: l(w sᵢ) < l(w) iff w(αᵢ) < 0
        let desc = (0..d.rank()).find(|&i| !is_positive(&w.apply_root(&d.simple_root(i))));
        match desc {
            Some(i) => {
                w.mat = mat_mul(&w.mat, &WeylElement::simple(d, i).mat);
                word.push(i);
            }
            None => break,
        }
    }
    word.reverse();
    word
}

fn is_positive(v: &[i64]) -> bool {
    v.iter().all(|&c| c >= 0) && v.iter().any(|&c| c > 0)
}

fn affine_positive(b: &AffineRoot) -> bool {
    b.delta > 0 || (b.delta == 0 && is_positive(&b.finite))
}

fn neg(v: &[i64]) -> Vec<i64> {
    v.iter().map(|c| -c).collect()
}

fn add_assign(a: &mut [i64], b: &[i64]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

fn invert(m: &[Vec<i64>]) -> Result<Vec<Vec<Rational64>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .map(|&x| Rational64::from(x))
                .chain((0..n).map(|j| Rational64::from(i64::from(i == j))))
                .collect()
        })
        .collect();
    for c in 0..n {
        let p = (c..n)
            .find(|&r| !a[r][c].is_zero())
            .ok_or_else(|| QloopError::Invalid("singular Cartan matrix".into()))?;
        a.swap(c, p);
        let pv = a[c][c];
        for x in a[c].iter_mut() {
            *x /= pv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c];
                let pivot_row = a[c].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    Ok(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

fn validate_ade(a: &[Vec<i64>]) -> Result<()> {
    let n = a.len();
    let bad = |m: &str| Err(QloopError::Invalid(m.to_string()));
    if n == 0 || a.iter().any(|r| r.len() != n) {
        return bad("Cartan matrix must be square and nonempty");
    }
    for i in 0..n {
        if a[i][i] != 2 {
            return bad("diagonal entries must be 2");
        }
        for j in 0..n {
            if i != j && (a[i][j] != a[j][i] || !matches!(a[i][j], 0 | -1)) {
                return bad("off-diagonal entries must be symmetric and in {0, -1}");
            }
        }
    }
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| j != i && a[i][j] != 0).collect())
        .collect();
    let edges: usize = adj.iter().map(Vec::len).sum::<usize>() / 2;
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for &j in &adj[i] {
            if !seen[j] {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    if seen.iter().any(|s| !s) || edges != n - 1 {
        return bad("Dynkin graph must be a connected tree");
    }
    let branch: Vec<usize> = (0..n).filter(|&i| adj[i].len() >= 3).collect();
    match branch.as_slice() {
        [] => Ok(()),
        [b] if adj[*b].len() == 3 => {
            // arm lengths p, q, r counted with the branch vertex
            let mut arms = Vec::new();
            for &start in &adj[*b] {
                let (mut prev, mut cur, mut len) = (*b, start, 2usize);
                loop {
                    let next: Vec<_> = adj[cur].iter().filter(|&&x| x != prev).collect();
                    match next.as_slice() {
                        [] => break,
                        [&x] => {
                            prev = cur;
                            cur = x;
                            len += 1;
                        }
                        _ => return bad("Dynkin graph has two branch points"),
                    }
                }
                arms.push(len as i64);
            }
            let (p, q, r) = (arms[0], arms[1], arms[2]);
            if q * r + p * r + p * q > p * q * r {
                Ok(())
            } else {
                bad("Dynkin graph is not of type A, D or E")
            }
        }
        _ => bad("Dynkin graph is not of type A, D or E"),
    }
}
