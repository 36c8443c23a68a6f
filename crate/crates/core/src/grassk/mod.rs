//! Type-A₁ geometric model: equivariant K-theory of `⊔ₐ Gr(a, ℓ)` (space F)
//! and of `⊔ₐ T*Gr(a, ℓ)` (space Q), computed through torus fixed points.
//!
//! Fixed points of component `a` are the `a`-subsets `S ⊆ {0, …, ℓ−1}`,
//! stored as bitmasks. At `S` the tautological bundle restricts to
//! `ℰ′|_S = Σ_{s∈S} z_s`, `𝒱 = qℰ′`, `𝒲 = Σ_j z_j`; the Grassmannian tangent
//! space has characters `z_j/z_s` (`s ∈ S`, `j ∉ S`) and the cotangent fibre
//! has characters `q²z_s/z_j`. The Euler class of a representation with
//! characters `w` is `Π(1 − w⁻¹)`.

mod class;
mod duality;
mod handle;
mod model;
mod ops;
mod pairing;
mod scalars;

pub use class::{FixedClass, Space, TailClass};
pub use model::{render_subset, subsets, A1Model, Subset};
pub use ops::Op;
pub use pairing::{gram_csv, PairValue, PairingKind};
pub use scalars::ScalarBook;
