//! Exact computations for the quantum loop algebra of a simply-laced Lie
//! algebra: root and affine Weyl combinatorics, quadratic sign maps, the
//! type-A₁ equivariant K-theory model of cotangent Grassmannians, and signed
//! canonical bases.

#![allow(clippy::needless_range_loop)]

pub mod canbasis;
pub mod error;
pub mod grassk;
pub mod quadmaps;
pub mod qring;
pub mod rootkit;
pub mod uqalg;

pub use error::{QloopError, Result};
pub use qring::{qbinom, qint, BarLaurent, RationalScalar, TailSeries, TorusScalar};
